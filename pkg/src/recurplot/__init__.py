"""Recurrence-plot analysis of scalar time series.

Construct binary and distance-colored recurrence plots, fit trend and
autoregressive forecast models, and detect texture transitions (dated
discontinuities in recurrence structure). The O(M^2) matrix kernels run on a
compiled core when available and fall back to numpy otherwise; see
``recurplot.KERNEL_BACKEND``.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .autoreg import (
    ARModel,
    ForecastResult,
    fit_ar,
    forecast,
    forecast_with_trend,
    impulse_response,
    simulate,
)
from .recurrence import (
    DistanceMatrix,
    EmbeddingConfig,
    OverlayMatrix,
    RecurrenceMatrix,
    binary_rp,
    binary_rp_local,
    distance_matrix,
    distance_to_csv,
    embed,
    local_thresholds,
    overlay,
    recurrence_rate,
    to_text_grid,
)
from .render import (
    PALETTES,
    RenderOptions,
    render_binary,
    render_distance,
    render_overlay,
)
from .series import (
    GapPolicy,
    TimeSeries,
    parse_csv,
    regularize,
    slice_by_date,
    to_csv,
)
from .stats import TrendModel, detrend, fit_trend, mean, threshold, trend_value
from .texture import (
    TextureProfile,
    Transition,
    TransitionReport,
    column_density,
    detect_transitions,
    report_to_json,
    report_to_table,
    transition_scores,
)

__version__ = "0.1.0"

__all__ = [
    "ARModel",
    "DistanceMatrix",
    "EmbeddingConfig",
    "ForecastResult",
    "GapPolicy",
    "KERNEL_BACKEND",
    "OverlayMatrix",
    "PALETTES",
    "RecurrenceMatrix",
    "RenderOptions",
    "TextureProfile",
    "TimeSeries",
    "Transition",
    "TransitionReport",
    "TrendModel",
    "binary_rp",
    "binary_rp_local",
    "column_density",
    "detect_transitions",
    "detrend",
    "distance_matrix",
    "distance_to_csv",
    "embed",
    "fit_ar",
    "fit_trend",
    "forecast",
    "forecast_with_trend",
    "impulse_response",
    "local_thresholds",
    "mean",
    "overlay",
    "parse_csv",
    "recurrence_rate",
    "regularize",
    "render_binary",
    "render_distance",
    "render_overlay",
    "report_to_json",
    "report_to_table",
    "simulate",
    "slice_by_date",
    "threshold",
    "to_csv",
    "to_text_grid",
    "transition_scores",
    "trend_value",
]
