"""Dated scalar time series: CSV ingestion, gap handling, date slicing.

The rest of the library assumes observations at uniform steps, so the
recurrence-plot axes stay linear in time. ``regularize`` is the one place
where calendar gaps (weekends, holidays) are resolved.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    DuplicateDate,
    EmptySeries,
    GapFound,
    GapTooLarge,
    MalformedRow,
    UnknownColumn,
)

ISO_DATE = "%Y-%m-%d"

GAP_MODES = ("forward_fill", "drop", "error")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Regularly indexed scalar observations, one value per date.

    Immutable after construction; the value buffer is read-only and the
    instance is safe to share across threads.
    """

    dates: tuple[dt.date, ...]
    values: np.ndarray
    label: str = ""

    def __init__(self, dates: Iterable[dt.date], values, label: str = ""):
        dates = tuple(dates)
        arr = np.array(values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if len(dates) == 0:
            raise EmptySeries("a series needs at least one observation")
        if len(dates) != arr.shape[0]:
            raise ValueError(
                f"{len(dates)} dates but {arr.shape[0]} values"
            )
        for a, b in zip(dates, dates[1:]):
            if a >= b:
                raise ValueError(f"dates not strictly increasing at {b}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("values must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "label", label)

    def __len__(self) -> int:
        return len(self.dates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.dates == other.dates
            and np.array_equal(self.values, other.values)
            and self.label == other.label
        )

    @property
    def start_date(self) -> dt.date:
        return self.dates[0]

    @property
    def end_date(self) -> dt.date:
        return self.dates[-1]


@dataclass(frozen=True)
class GapPolicy:
    """How ``regularize`` treats missing calendar days.

    forward_fill: insert every missing day carrying the previous value,
    refusing gaps wider than ``max_gap_days``.
    drop: keep observations as they are; positions index them consecutively.
    error: any gap wider than one day is fatal.
    """

    mode: str = "forward_fill"
    max_gap_days: int = 7

    def __post_init__(self):
        if self.mode not in GAP_MODES:
            raise ValueError(f"unknown gap mode {self.mode!r}")
        if self.max_gap_days < 1:
            raise ValueError("max_gap_days must be >= 1")


def parse_csv(
    raw_text: str,
    date_column: str = "date",
    value_column: str = "value",
    date_format: str = ISO_DATE,
    label: str | None = None,
) -> TimeSeries:
    """Parse CSV text (header row required) into a TimeSeries.

    Rows whose value cell is empty are skipped. Output is sorted by date;
    duplicate dates are an error rather than silently resolved.
    """
    reader = csv.DictReader(io.StringIO(raw_text))
    header = reader.fieldnames or []
    for name in (date_column, value_column):
        if name not in header:
            raise UnknownColumn(f"column {name!r} not in header {header}")

    rows: list[tuple[dt.date, float]] = []
    seen: set[dt.date] = set()
    for i, record in enumerate(reader, start=1):
        raw_value = (record.get(value_column) or "").strip()
        if raw_value == "":
            continue
        raw_date = (record.get(date_column) or "").strip()
        try:
            date = dt.datetime.strptime(raw_date, date_format).date()
        except ValueError:
            raise MalformedRow(i, f"cannot parse date {raw_date!r}") from None
        try:
            value = float(raw_value)
        except ValueError:
            raise MalformedRow(i, f"cannot parse value {raw_value!r}") from None
        if not math.isfinite(value):
            raise MalformedRow(i, f"non-finite value {raw_value!r}")
        if date in seen:
            raise DuplicateDate(f"date {date.isoformat()} appears twice")
        seen.add(date)
        rows.append((date, value))

    if not rows:
        raise EmptySeries("no usable rows")
    rows.sort(key=lambda r: r[0])
    return TimeSeries(
        dates=[r[0] for r in rows],
        values=[r[1] for r in rows],
        label=value_column if label is None else label,
    )


def to_csv(series: TimeSeries) -> str:
    """Serialize to ``date,value`` CSV, round-trip exact (17 significant digits)."""
    lines = ["date,value"]
    for date, value in zip(series.dates, series.values):
        lines.append(f"{date.isoformat()},{value:.17g}")
    return "\n".join(lines) + "\n"


def regularize(series: TimeSeries, policy: GapPolicy) -> TimeSeries:
    """Resolve calendar gaps according to ``policy``.

    Forward fill produces one observation per calendar day between the first
    and last date; a filled day carries the most recent observed value.
    """
    deltas = [
        (b - a).days for a, b in zip(series.dates, series.dates[1:])
    ]
    if policy.mode == "drop":
        return series
    if policy.mode == "error":
        for gap, date in zip(deltas, series.dates[1:]):
            if gap > 1:
                raise GapFound(
                    f"{gap - 1} missing day(s) before {date.isoformat()}"
                )
        return series

    # forward_fill
    for gap, date in zip(deltas, series.dates[1:]):
        if gap > policy.max_gap_days:
            raise GapTooLarge(
                f"{gap} day gap before {date.isoformat()} exceeds "
                f"max_gap_days={policy.max_gap_days}"
            )
    if all(gap == 1 for gap in deltas):
        return series
    dates: list[dt.date] = []
    values: list[float] = []
    one = dt.timedelta(days=1)
    for k in range(len(series)):
        dates.append(series.dates[k])
        values.append(series.values[k])
        if k + 1 < len(series):
            day = series.dates[k] + one
            while day < series.dates[k + 1]:
                dates.append(day)
                values.append(series.values[k])
                day += one
    return TimeSeries(dates, values, label=series.label)


def slice_by_date(series: TimeSeries, start: dt.date, end: dt.date) -> TimeSeries:
    """Keep observations with ``start <= date <= end`` (order preserved)."""
    if start > end:
        raise ValueError("start must not exceed end")
    keep = [k for k, d in enumerate(series.dates) if start <= d <= end]
    if not keep:
        raise EmptySeries(
            f"no observations in [{start.isoformat()}, {end.isoformat()}]"
        )
    return TimeSeries(
        [series.dates[k] for k in keep],
        series.values[keep],
        label=series.label,
    )
