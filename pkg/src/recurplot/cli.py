"""Command-line interface.

Every subcommand writes its artifacts plus a machine-readable manifest
(`<stem>.manifest.json`) recording the resolved parameters and input digests,
so a run can be reproduced byte for byte. On failure the exit status is
nonzero, a single diagnostic line names the error, and partial artifacts are
removed.
"""

from __future__ import annotations

import argparse
import datetime as dt
import hashlib
import json
import sys
from pathlib import Path

from . import _kernels
from .autoreg import ARModel, fit_ar, forecast, forecast_with_trend, simulate
from .errors import RecurplotError, SizeMismatch
from .recurrence import (
    EmbeddingConfig,
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
from .render import PALETTES, RenderOptions, render_binary, render_distance, render_overlay
from .series import ISO_DATE, GapPolicy, TimeSeries, parse_csv, slice_by_date, regularize, to_csv
from .stats import fit_trend, threshold
from .texture import detect_transitions, report_to_json, report_to_table


# --- argument plumbing ----------------------------------------------------

def _add_io_arguments(parser, input_flags=("--input",)):
    for flag in input_flags:
        parser.add_argument(flag, required=True, type=Path,
                            help="input series CSV")
    parser.add_argument("--out", required=True, type=Path,
                        help="output artifact path (or prefix)")


def _add_series_arguments(parser):
    parser.add_argument("--date-column", default="date")
    parser.add_argument("--value-column", default="value")
    parser.add_argument("--date-format", default=ISO_DATE,
                        help="strptime pattern for the date column")
    parser.add_argument("--gap-mode", default="forward_fill",
                        choices=("forward_fill", "drop", "error"))
    parser.add_argument("--max-gap-days", type=int, default=7)
    parser.add_argument("--start", type=dt.date.fromisoformat, default=None,
                        help="keep observations from this date (ISO)")
    parser.add_argument("--end", type=dt.date.fromisoformat, default=None,
                        help="keep observations up to this date (ISO)")


def _add_embedding_arguments(parser):
    parser.add_argument("--embed-dim", type=int, default=1,
                        help="embedding dimension (1 = raw series)")
    parser.add_argument("--embed-delay", type=int, default=1,
                        help="embedding delay in observations")


def _add_render_arguments(parser):
    parser.add_argument("--cell-pixels", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recurplot",
        description="Recurrence plots, forecasts, and texture transitions "
                    "of scalar time series.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("rp", help="binary recurrence plot (PNG + 0/1 grid)")
    _add_io_arguments(p)
    _add_series_arguments(p)
    _add_embedding_arguments(p)
    _add_render_arguments(p)
    p.add_argument("--local-threshold-window", type=int, default=0,
                   help="sliding window for per-index cutoffs (0 = global)")
    p.set_defaults(handler=_run_rp)

    p = sub.add_parser("distplot", help="distance-colored recurrence plot")
    _add_io_arguments(p)
    _add_series_arguments(p)
    _add_embedding_arguments(p)
    _add_render_arguments(p)
    p.add_argument("--colormap", default="thermal", choices=sorted(PALETTES))
    p.add_argument("--distance-csv", type=Path, default=None,
                   help="also dump the distance matrix as CSV")
    p.set_defaults(handler=_run_distplot)

    p = sub.add_parser("overlay", help="two-series recurrence overlay")
    _add_io_arguments(p, input_flags=("--input-a", "--input-b"))
    _add_series_arguments(p)
    _add_embedding_arguments(p)
    _add_render_arguments(p)
    p.add_argument("--clip-to-common-range", action="store_true",
                   help="slice both series to their common date range "
                        "instead of failing on length mismatch")
    p.set_defaults(handler=_run_overlay)

    p = sub.add_parser("ar", help="fit an autoregression and forecast")
    _add_io_arguments(p)
    _add_series_arguments(p)
    p.add_argument("--order", type=int, required=True, help="model order p")
    p.add_argument("--horizon", type=int, required=True)
    p.set_defaults(handler=_run_ar)

    p = sub.add_parser("trend", help="polynomial trend fit (optionally "
                                     "with a combined trend+AR forecast)")
    _add_io_arguments(p)
    _add_series_arguments(p)
    p.add_argument("--degree", type=int, default=1, choices=(1, 2))
    p.add_argument("--order", type=int, default=None,
                   help="AR order for a combined forecast on the residuals")
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(handler=_run_trend)

    p = sub.add_parser("transitions", help="detect texture transitions")
    _add_io_arguments(p)
    _add_series_arguments(p)
    _add_embedding_arguments(p)
    p.add_argument("--local-threshold-window", type=int, default=0)
    p.add_argument("--window", type=int, default=30)
    p.add_argument("--score-threshold", type=float, default=0.5)
    p.add_argument("--min-separation", type=int, default=None,
                   help="minimum index gap between reports (default: window)")
    p.set_defaults(handler=_run_transitions)

    p = sub.add_parser("simulate", help="generate a synthetic series from "
                                        "a model JSON")
    p.add_argument("--model", required=True, type=Path,
                   help="autoregression model JSON ({c, rho, p, noise_std})")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--initial", default=None,
                   help="comma-separated first p values (default zeros)")
    p.add_argument("--start-date", type=dt.date.fromisoformat,
                   default=dt.date(2000, 1, 1))
    p.add_argument("--label", default="simulated")
    p.set_defaults(handler=_run_simulate)

    return parser


# --- run bookkeeping -------------------------------------------------------

class _Run:
    """Tracks written artifacts so a failed run leaves nothing behind."""

    def __init__(self, out: Path):
        self.out = out
        self.written: list[Path] = []
        self.inputs: list[Path] = []

    def write_bytes(self, path: Path, data: bytes):
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        self.written.append(path)

    def write_text(self, path: Path, text: str):
        self.write_bytes(path, text.encode("utf-8"))

    def read_text(self, path: Path) -> str:
        text = path.read_text(encoding="utf-8")
        self.inputs.append(path)
        return text

    def manifest_path(self) -> Path:
        return self.out.with_suffix("").with_name(
            self.out.with_suffix("").name + ".manifest.json")

    def write_manifest(self, subcommand: str, params: dict):
        digests = [
            {"path": str(p),
             "sha256": hashlib.sha256(p.read_bytes()).hexdigest()}
            for p in self.inputs
        ]
        manifest = {
            "subcommand": subcommand,
            "parameters": params,
            "inputs": digests,
            "outputs": [str(p) for p in self.written],
            "kernel_backend": _kernels.BACKEND,
        }
        self.write_text(self.manifest_path(),
                        json.dumps(manifest, indent=2, sort_keys=True) + "\n")

    def discard_artifacts(self):
        for path in self.written:
            path.unlink(missing_ok=True)


def _series_params(args) -> dict:
    return {
        "date_column": args.date_column,
        "value_column": args.value_column,
        "date_format": args.date_format,
        "gap_mode": args.gap_mode,
        "max_gap_days": args.max_gap_days,
        "start": args.start.isoformat() if args.start else None,
        "end": args.end.isoformat() if args.end else None,
    }


def _embedding_params(args) -> dict:
    return {"embed_dim": args.embed_dim, "embed_delay": args.embed_delay}


def _load_series(run: _Run, args, path: Path) -> TimeSeries:
    series = parse_csv(
        run.read_text(path),
        date_column=args.date_column,
        value_column=args.value_column,
        date_format=args.date_format,
    )
    if args.start is not None or args.end is not None:
        series = slice_by_date(series,
                               args.start or series.start_date,
                               args.end or series.end_date)
    policy = GapPolicy(mode=args.gap_mode, max_gap_days=args.max_gap_days)
    return regularize(series, policy)


def _build_rp(series: TimeSeries, args):
    """Shared rp/transitions pipeline: embed, distances, threshold, pack."""
    config = EmbeddingConfig(args.embed_dim, args.embed_delay)
    states = embed(series, config)
    dm = distance_matrix(states)
    if args.local_threshold_window > 0:
        cutoffs = local_thresholds(series, args.local_threshold_window)
        return binary_rp_local(dm, cutoffs[:dm.size])
    return binary_rp(dm, threshold(series))


# --- subcommand handlers ---------------------------------------------------

def _run_rp(run: _Run, args):
    series = _load_series(run, args, args.input)
    rp = _build_rp(series, args)
    options = RenderOptions(cell_pixels=args.cell_pixels)
    run.write_bytes(args.out, render_binary(rp, options))
    run.write_text(args.out.with_suffix(".txt"), to_text_grid(rp))
    run.write_manifest("rp", {
        **_series_params(args), **_embedding_params(args),
        "local_threshold_window": args.local_threshold_window,
        "cell_pixels": args.cell_pixels,
        "matrix_size": rp.size,
        "threshold": rp.threshold_used,
        "recurrence_rate": recurrence_rate(rp),
    })


def _run_distplot(run: _Run, args):
    series = _load_series(run, args, args.input)
    config = EmbeddingConfig(args.embed_dim, args.embed_delay)
    dm = distance_matrix(embed(series, config))
    options = RenderOptions(cell_pixels=args.cell_pixels, colormap=args.colormap)
    run.write_bytes(args.out, render_distance(dm, options))
    if args.distance_csv is not None:
        run.write_text(args.distance_csv, distance_to_csv(dm))
    run.write_manifest("distplot", {
        **_series_params(args), **_embedding_params(args),
        "cell_pixels": args.cell_pixels,
        "colormap": args.colormap,
        "matrix_size": dm.size,
        "max_distance": dm.max(),
    })


def _run_overlay(run: _Run, args):
    series_a = _load_series(run, args, args.input_a)
    series_b = _load_series(run, args, args.input_b)
    if args.clip_to_common_range:
        start = max(series_a.start_date, series_b.start_date)
        end = min(series_a.end_date, series_b.end_date)
        series_a = slice_by_date(series_a, start, end)
        series_b = slice_by_date(series_b, start, end)
    if len(series_a) != len(series_b):
        raise SizeMismatch(
            f"regularized lengths differ ({len(series_a)} vs {len(series_b)}); "
            "pass --clip-to-common-range to intersect the date ranges")
    config = EmbeddingConfig(args.embed_dim, args.embed_delay)
    rp_a = binary_rp(distance_matrix(embed(series_a, config)), threshold(series_a))
    rp_b = binary_rp(distance_matrix(embed(series_b, config)), threshold(series_b))
    options = RenderOptions(cell_pixels=args.cell_pixels)
    run.write_bytes(args.out, render_overlay(overlay(rp_a, rp_b), options))
    run.write_manifest("overlay", {
        **_series_params(args), **_embedding_params(args),
        "cell_pixels": args.cell_pixels,
        "clip_to_common_range": args.clip_to_common_range,
        "matrix_size": rp_a.size,
        "threshold_a": rp_a.threshold_used,
        "threshold_b": rp_b.threshold_used,
    })


def _run_ar(run: _Run, args):
    series = _load_series(run, args, args.input)
    model = fit_ar(series, args.order)
    result = forecast(model, series.values, args.horizon)
    run.write_text(_with_suffix(args.out, ".model.json"), model.to_json() + "\n")
    run.write_text(_with_suffix(args.out, ".forecast.csv"),
                   _forecast_csv(series, result.predictions))
    run.write_manifest("ar", {
        **_series_params(args),
        "order": args.order,
        "horizon": args.horizon,
        "is_stationary": model.is_stationary,
    })


def _run_trend(run: _Run, args):
    if (args.order is None) != (args.horizon is None):
        raise RecurplotError("--order and --horizon must be given together")
    series = _load_series(run, args, args.input)
    model = fit_trend(series, args.degree)
    trend_json = json.dumps({
        "degree": model.degree,
        "coefficients": list(model.coefficients),
        "origin_index": model.origin_index,
    }, sort_keys=True)
    run.write_text(_with_suffix(args.out, ".trend.json"), trend_json + "\n")
    if args.order is not None:
        result = forecast_with_trend(series, args.degree, args.order, args.horizon)
        run.write_text(_with_suffix(args.out, ".forecast.csv"),
                       _forecast_csv(series, result.predictions))
    run.write_manifest("trend", {
        **_series_params(args),
        "degree": args.degree,
        "order": args.order,
        "horizon": args.horizon,
    })


def _run_transitions(run: _Run, args):
    series = _load_series(run, args, args.input)
    rp = _build_rp(series, args)
    report = detect_transitions(
        rp,
        window=args.window,
        score_threshold=args.score_threshold,
        min_separation=args.min_separation,
        dates=series.dates[:rp.size],
    )
    run.write_text(args.out, report_to_json(report))
    sys.stdout.write(report_to_table(report))
    run.write_manifest("transitions", {
        **_series_params(args), **_embedding_params(args),
        "local_threshold_window": args.local_threshold_window,
        "window": args.window,
        "score_threshold": args.score_threshold,
        "min_separation": (args.window if args.min_separation is None
                           else args.min_separation),
        "matrix_size": rp.size,
    })


def _run_simulate(run: _Run, args):
    model = ARModel.from_json(run.read_text(args.model))
    if args.initial is None:
        initial = [0.0] * model.p
    else:
        initial = [float(v) for v in args.initial.split(",")]
    series = simulate(model, n=args.n, seed=args.seed, initial=initial,
                      start=args.start_date, label=args.label)
    run.write_text(args.out, to_csv(series))
    run.write_manifest("simulate", {
        "n": args.n,
        "seed": args.seed,
        "initial": initial,
        "start_date": args.start_date.isoformat(),
        "label": args.label,
    })


def _with_suffix(out: Path, suffix: str) -> Path:
    return out.with_suffix("").with_name(out.with_suffix("").name + suffix)


def _forecast_csv(series: TimeSeries, predictions) -> str:
    lines = ["step,date,prediction"]
    for k, value in enumerate(predictions):
        date = series.end_date + dt.timedelta(days=k + 1)
        lines.append(f"{k},{date.isoformat()},{value:.17g}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    run = _Run(args.out)
    try:
        args.handler(run, args)
    except (RecurplotError, OSError, ValueError) as exc:
        run.discard_artifacts()
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
