"""Texture of a recurrence matrix along the time axis, and detection of
texture transitions: dated points where the plot's pattern breaks.

The transition score at a candidate split compares the two window-sized
diagonal blocks flanking it with the cross block between them,

    s(j) = mean(rp[A, A]) + mean(rp[B, B]) - 2 * mean(rp[A, B]),

so s is near zero while texture is homogeneous and approaches 2 when the two
epochs never recur into each other.
"""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import WindowTooLarge
from .recurrence import RecurrenceMatrix


@dataclass(frozen=True, eq=False)
class TextureProfile:
    """Rolling block density: densities[j] is the mean of the matrix bits over
    rows max(0, j-window+1)..j and all columns."""

    window: int
    densities: np.ndarray


@dataclass(frozen=True)
class Transition:
    index: int
    date: dt.date | None
    score: float


@dataclass(frozen=True)
class TransitionParams:
    window: int
    score_threshold: float
    min_separation: int


@dataclass(frozen=True)
class TransitionReport:
    """Detected transitions, sorted by score descending (ties: lower index)."""

    transitions: tuple[Transition, ...]
    params: TransitionParams


def column_density(rp: RecurrenceMatrix, window: int) -> TextureProfile:
    """Reduce the matrix to a 1-D texture signal of local densities."""
    m = rp.size
    if not 1 <= window <= m:
        raise WindowTooLarge(f"window {window} outside 1..{m}")
    row_sums = rp.to_array().sum(axis=1, dtype=np.int64)
    prefix = np.concatenate([[0], np.cumsum(row_sums)])
    j = np.arange(m)
    lo = np.maximum(0, j - window + 1)
    counts = prefix[j + 1] - prefix[lo]
    cells = (j + 1 - lo) * m
    return TextureProfile(window=window, densities=counts / cells)


def transition_scores(rp: RecurrenceMatrix, window: int) -> np.ndarray:
    """Scores s(j) for candidates j = window .. M-window-1."""
    m = rp.size
    if window < 1 or 2 * window > m:
        raise WindowTooLarge(f"2*window = {2 * window} exceeds matrix size {m}")
    return _kernels.transition_scores(rp.to_array(), window)


def detect_transitions(
    rp: RecurrenceMatrix,
    window: int = 30,
    score_threshold: float = 0.5,
    min_separation: int | None = None,
    dates: Sequence[dt.date] | None = None,
) -> TransitionReport:
    """Report local score maxima above the threshold, strongest first.

    Greedy suppression keeps reported indices at least ``min_separation``
    apart (default: the window). ``dates`` must align with matrix rows; when
    given, each transition carries the date its split index falls on.
    """
    if min_separation is None:
        min_separation = window
    if min_separation < 1:
        raise ValueError("min_separation must be >= 1")
    if score_threshold < 0:
        raise ValueError("score_threshold must be >= 0")
    if dates is not None and len(dates) < rp.size:
        raise ValueError("fewer dates than matrix rows")

    scores = transition_scores(rp, window)
    candidates = []
    for k, score in enumerate(scores):
        left = scores[k - 1] if k > 0 else -np.inf
        right = scores[k + 1] if k + 1 < len(scores) else -np.inf
        if score > score_threshold and score >= left and score >= right:
            candidates.append((float(score), window + k))
    candidates.sort(key=lambda c: (-c[0], c[1]))

    kept: list[Transition] = []
    for score, index in candidates:
        if all(abs(index - t.index) >= min_separation for t in kept):
            kept.append(Transition(
                index=index,
                date=dates[index] if dates is not None else None,
                score=score,
            ))
    return TransitionReport(
        transitions=tuple(kept),
        params=TransitionParams(window=window, score_threshold=score_threshold,
                                min_separation=min_separation),
    )


def report_to_json(report: TransitionReport) -> str:
    payload = {
        "params": {
            "window": report.params.window,
            "score_threshold": report.params.score_threshold,
            "min_separation": report.params.min_separation,
        },
        "transitions": [
            {
                "index": t.index,
                "date": t.date.isoformat() if t.date is not None else None,
                "score": t.score,
            }
            for t in report.transitions
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_to_table(report: TransitionReport) -> str:
    """Plain-text table for terminal output."""
    lines = [
        f"texture transitions (window={report.params.window}, "
        f"score_threshold={report.params.score_threshold}, "
        f"min_separation={report.params.min_separation})",
        f"{'index':>8}  {'date':<12}  {'score':>8}",
    ]
    if not report.transitions:
        lines.append("  (none)")
    for t in report.transitions:
        date = t.date.isoformat() if t.date is not None else "-"
        lines.append(f"{t.index:>8}  {date:<12}  {t.score:>8.4f}")
    return "\n".join(lines) + "\n"
