"""Series statistics: mean, the recurrence threshold, polynomial trends.

The threshold is the population root-mean-square deviation of the series
(1/N normalization). It doubles as the default cutoff distance when building
recurrence matrices, so it must be translation invariant and scale with the
data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularFit
from .series import TimeSeries


@dataclass(frozen=True)
class TrendModel:
    """Polynomial trend ``value(t) = sum_k coefficients[k] * (t - origin_index)**k``.

    Coefficients are constant-first. ``fit_trend`` always reports them
    re-expanded about t = 0 (``origin_index == 0``).
    """

    degree: int
    coefficients: tuple[float, ...]
    origin_index: int = 0

    def __post_init__(self):
        if len(self.coefficients) != self.degree + 1:
            raise ValueError("need degree + 1 coefficients")
        if not all(np.isfinite(c) for c in self.coefficients):
            raise ValueError("coefficients must be finite")


def mean(series: TimeSeries) -> float:
    return float(np.mean(series.values))


def rms_deviation(values: np.ndarray) -> float:
    """Population RMS deviation from the mean, sqrt((1/N) sum (x - mean)^2)."""
    x = np.asarray(values, dtype=np.float64)
    centered = x - x.mean()
    return float(np.sqrt(np.mean(centered * centered)))


def threshold(series: TimeSeries) -> float:
    """Self-calibrating recurrence threshold of a series.

    Zero only for a constant series; invariant under constant shifts and
    equivariant under scaling.
    """
    return rms_deviation(series.values)


def fit_trend(series: TimeSeries, degree: int) -> TrendModel:
    """Least-squares polynomial trend over the observation index 0..N-1.

    Solved by normal equations on indices centered at N//2 (keeps the
    Gram matrix well conditioned), then re-expanded about index 0.
    """
    if degree not in (1, 2):
        raise ValueError("degree must be 1 or 2")
    n = len(series)
    if n <= degree:
        raise SingularFit(f"{n} observations cannot determine degree {degree}")

    center = n // 2
    t = np.arange(n, dtype=np.float64) - center
    design = np.vander(t, degree + 1, increasing=True)
    gram = design.T @ design
    rhs = design.T @ series.values
    try:
        centered_coeffs = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        raise SingularFit("normal equations are singular") from None

    # shift the polynomial from powers of (i - center) to powers of i
    poly = np.polynomial.Polynomial(centered_coeffs)(
        np.polynomial.Polynomial([-float(center), 1.0])
    )
    coeffs = np.zeros(degree + 1)
    coeffs[: len(poly.coef)] = poly.coef
    return TrendModel(degree=degree, coefficients=tuple(float(c) for c in coeffs))


def trend_value(trend: TrendModel, index: float) -> float:
    """Evaluate the trend at an observation index (may lie beyond the fit)."""
    t = index - trend.origin_index
    acc = 0.0
    for c in reversed(trend.coefficients):
        acc = acc * t + c
    return acc


def detrend(series: TimeSeries, trend: TrendModel) -> TimeSeries:
    """Subtract the trend; dates unchanged."""
    fitted = np.array([trend_value(trend, i) for i in range(len(series))])
    return TimeSeries(series.dates, series.values - fitted, label=series.label)
