"""Autoregressive models: conditional OLS fit, recursive point forecasts,
unit-shock propagation, and a seeded simulator for synthetic series.

A model of order p writes today's value as an intercept plus a weighted sum
of the p previous values plus white noise. Forecasts set the noise term to
zero; beyond one step they feed earlier predictions back in as history.
"""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateSeries, InsufficientData, InsufficientHistory
from .series import TimeSeries
from .stats import detrend, fit_trend, trend_value


@dataclass(frozen=True)
class ARModel:
    """Order-p autoregression ``X[i] = c + sum_j rho[j-1] * X[i-j] + e[i]``."""

    c: float
    rho: tuple[float, ...]
    noise_std: float = 0.0

    def __post_init__(self):
        if len(self.rho) < 1:
            raise ValueError("order must be at least 1")
        if not (np.isfinite(self.c) and all(np.isfinite(r) for r in self.rho)):
            raise ValueError("parameters must be finite")
        if not (np.isfinite(self.noise_std) and self.noise_std >= 0):
            raise ValueError("noise_std must be finite and >= 0")

    @property
    def p(self) -> int:
        return len(self.rho)

    @property
    def is_stationary(self) -> bool:
        """True when all characteristic roots lie inside the unit circle.

        Fitting does not enforce this; non-stationary models still forecast
        and simulate, they just never damp a shock.
        """
        roots = np.roots([1.0, *(-r for r in self.rho)])
        return bool(np.all(np.abs(roots) < 1.0))

    def to_json(self) -> str:
        return json.dumps(
            {"c": self.c, "rho": list(self.rho), "p": self.p,
             "noise_std": self.noise_std},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "ARModel":
        data = json.loads(text)
        model = cls(c=float(data["c"]),
                    rho=tuple(float(r) for r in data["rho"]),
                    noise_std=float(data.get("noise_std", 0.0)))
        if "p" in data and int(data["p"]) != model.p:
            raise ValueError("declared order p disagrees with len(rho)")
        return model


@dataclass(frozen=True)
class ForecastResult:
    """Point forecasts; ``is_iterated`` marks reuse of earlier predictions."""

    horizon: int
    predictions: tuple[float, ...]
    is_iterated: bool

    def __post_init__(self):
        if len(self.predictions) != self.horizon:
            raise ValueError("one prediction per horizon step")


def fit_ar(series: TimeSeries, p: int) -> ARModel:
    """Conditional least-squares fit of an order-p autoregression.

    Regresses X[i] on (1, X[i-1], ..., X[i-p]) for i = p..N-1. On noiseless
    data generated by such a model the true parameters are recovered to
    numerical precision. ``noise_std`` is the residual RMS.
    """
    if p < 1:
        raise ValueError("order must be at least 1")
    n = len(series)
    if n < p + 2:
        raise InsufficientData(f"need at least {p + 2} observations for order {p}")

    x = series.values
    design = np.ones((n - p, p + 1))
    for j in range(1, p + 1):
        design[:, j] = x[p - j:n - j]
    targets = x[p:]

    coeffs, _, rank, _ = np.linalg.lstsq(design, targets, rcond=None)
    if rank < p + 1:
        raise DegenerateSeries(
            "regressors are collinear (constant or near-constant series)")
    residuals = targets - design @ coeffs
    noise_std = float(np.sqrt(np.mean(residuals * residuals)))
    return ARModel(c=float(coeffs[0]), rho=tuple(float(r) for r in coeffs[1:]),
                   noise_std=noise_std)


def forecast(model: ARModel, history: Sequence[float], horizon: int) -> ForecastResult:
    """Recursive point forecast (noise term zero).

    Step 0 uses the tail of ``history``; later steps append earlier
    predictions, so a horizon-k call equals k chained one-step calls.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if len(history) < model.p:
        raise InsufficientHistory(
            f"need {model.p} values of history, got {len(history)}")

    window = [float(v) for v in history[-model.p:]]
    predictions = []
    for _ in range(horizon):
        value = model.c
        for j, r in enumerate(model.rho, start=1):
            value += r * window[-j]
        predictions.append(value)
        window.append(value)
        window.pop(0)
    return ForecastResult(horizon=horizon, predictions=tuple(predictions),
                          is_iterated=horizon > 1)


def impulse_response(model: ARModel, k: int) -> float:
    """Effect of a unit one-time shock on the value k periods later.

    psi[0] = 1 and psi[k] = sum_j rho[j] * psi[k-j]; for order 1 this is
    rho**k, shrinking toward zero exactly when the model is stationary.
    """
    if k < 0:
        raise ValueError("lag must be >= 0")
    psi = [1.0]
    for i in range(1, k + 1):
        acc = 0.0
        for j in range(1, min(i, model.p) + 1):
            acc += model.rho[j - 1] * psi[i - j]
        psi.append(acc)
    return psi[k]


def simulate(model: ARModel, n: int, seed: int,
             initial: Sequence[float],
             start: dt.date = dt.date(2000, 1, 1),
             label: str = "simulated") -> TimeSeries:
    """Generate n values of the process, deterministic for a fixed seed.

    The first p values are ``initial``; the rest follow the recursion with
    Gaussian noise of scale ``noise_std``. Dates are consecutive days.
    """
    if len(initial) != model.p:
        raise ValueError(f"need exactly {model.p} initial values")
    if n < model.p:
        raise ValueError("n must be at least the model order")

    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, 1.0, size=max(n - model.p, 0)) * model.noise_std
    values = np.empty(n)
    values[:model.p] = [float(v) for v in initial]
    for i in range(model.p, n):
        acc = model.c
        for j, r in enumerate(model.rho, start=1):
            acc += r * values[i - j]
        values[i] = acc + noise[i - model.p]
    dates = [start + dt.timedelta(days=k) for k in range(n)]
    return TimeSeries(dates, values, label=label)


def forecast_with_trend(series: TimeSeries, degree: int, p: int,
                        horizon: int) -> ForecastResult:
    """Trend-plus-autoregression forecast.

    Fits a polynomial trend for the long-term movement, an AR(p) on the
    detrended residuals for the short-term one, and returns the trend
    extrapolation plus the residual forecast at indices N..N+horizon-1.
    """
    trend = fit_trend(series, degree)
    residual = detrend(series, trend)
    model = fit_ar(residual, p)
    residual_forecast = forecast(model, residual.values, horizon)
    n = len(series)
    predictions = tuple(
        trend_value(trend, n + k) + residual_forecast.predictions[k]
        for k in range(horizon)
    )
    return ForecastResult(horizon=horizon, predictions=predictions,
                          is_iterated=horizon > 1)
