"""Recurrence machinery: delay embedding, pairwise distances, thresholded
binary matrices, two-series overlays, and the recurrence-rate summary.

A recurrence matrix marks the pairs of times whose states lie within a
threshold distance of each other; the value at a time trivially recurs with
itself, so the main diagonal is always set. Binary matrices are stored
bit-packed (M^2 bits); distances stay dense float64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NegativeThreshold, SeriesTooShort, SizeMismatch
from .series import TimeSeries
from .stats import rms_deviation

# overlay cell categories
NEITHER, ONLY_A, ONLY_B, BOTH = 0, 1, 2, 3


@dataclass(frozen=True)
class EmbeddingConfig:
    """Delay embedding with ``dimension`` coordinates spaced ``delay`` apart.

    Dimension 1 is the identity: states are the raw scalar observations.
    """

    dimension: int = 1
    delay: int = 1

    def __post_init__(self):
        if self.dimension < 1 or self.delay < 1:
            raise ValueError("dimension and delay must be >= 1")

    def embedded_length(self, n: int) -> int:
        return n - (self.dimension - 1) * self.delay


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Dense symmetric matrix of pairwise state distances."""

    values: np.ndarray

    def __init__(self, values: np.ndarray):
        arr = np.ascontiguousarray(values, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("distance matrix must be square")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def max(self) -> float:
        return float(self.values.max())


@dataclass(frozen=True, eq=False)
class RecurrenceMatrix:
    """Binary recurrence matrix, rows bit-packed MSB-first.

    ``threshold_used`` records the global cutoff; it is NaN when per-index
    thresholds built the matrix.
    """

    size: int
    packed: np.ndarray
    threshold_used: float

    def __init__(self, size: int, packed: np.ndarray, threshold_used: float):
        packed = np.ascontiguousarray(packed, dtype=np.uint8)
        if packed.shape != (size, (size + 7) // 8):
            raise ValueError("packed buffer does not match size")
        packed.flags.writeable = False
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "packed", packed)
        object.__setattr__(self, "threshold_used", threshold_used)

    def to_array(self) -> np.ndarray:
        """Unpack to a dense (M, M) uint8 matrix of 0/1 cells."""
        return np.unpackbits(self.packed, axis=1, count=self.size)

    def count_ones(self) -> int:
        return int(np.unpackbits(self.packed, axis=1, count=self.size).sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RecurrenceMatrix):
            return NotImplemented
        return self.size == other.size and np.array_equal(self.packed, other.packed)


@dataclass(frozen=True, eq=False)
class OverlayMatrix:
    """Cellwise combination of two equal-size recurrence matrices.

    Codes: 0 neither, 1 only_a, 2 only_b, 3 both.
    """

    cells: np.ndarray

    def __init__(self, cells: np.ndarray):
        cells = np.ascontiguousarray(cells, dtype=np.uint8)
        if cells.ndim != 2 or cells.shape[0] != cells.shape[1]:
            raise ValueError("overlay matrix must be square")
        cells.flags.writeable = False
        object.__setattr__(self, "cells", cells)

    @property
    def size(self) -> int:
        return self.cells.shape[0]


def embed(series: TimeSeries, config: EmbeddingConfig = EmbeddingConfig()) -> np.ndarray:
    """State sequence (M, m): state i is (X[i], X[i+tau], ..., X[i+(m-1)tau])."""
    n = len(series)
    m_len = config.embedded_length(n)
    if m_len < 1:
        raise SeriesTooShort(
            f"N={n} leaves no states for dimension {config.dimension}, "
            f"delay {config.delay}")
    idx = np.arange(m_len)[:, None] + np.arange(config.dimension)[None, :] * config.delay
    return np.ascontiguousarray(series.values[idx])


def distance_matrix(states: np.ndarray) -> DistanceMatrix:
    """Euclidean distances between all pairs of states."""
    states = np.ascontiguousarray(states, dtype=np.float64)
    if states.ndim == 1:
        states = states[:, None]
    return DistanceMatrix(_kernels.pairwise_distances(states))


def binary_rp(distances: DistanceMatrix, threshold: float) -> RecurrenceMatrix:
    """Cell (i, j) = 1 iff distance(i, j) <= threshold.

    Equality counts as recurrence, which keeps the diagonal set even when
    the threshold is exactly zero.
    """
    if threshold < 0:
        raise NegativeThreshold(f"threshold {threshold} < 0")
    vec = np.full(distances.size, float(threshold))
    packed = _kernels.pack_recurrence(distances.values, vec)
    return RecurrenceMatrix(distances.size, packed, float(threshold))


def local_thresholds(series: TimeSeries, window: int) -> np.ndarray:
    """Per-index cutoffs: the RMS deviation over a centered sliding window.

    Restores sensitivity to level shifts that a single global cutoff washes
    out; windows truncate at the series edges.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    n = len(series)
    half = window // 2
    out = np.empty(n)
    for i in range(n):
        lo = max(0, i - half)
        hi = min(n, i - half + window)
        out[i] = rms_deviation(series.values[lo:hi])
    return out


def binary_rp_local(distances: DistanceMatrix, thresholds: np.ndarray) -> RecurrenceMatrix:
    """Cell (i, j) = 1 iff distance(i, j) <= min(thresholds[i], thresholds[j]).

    The elementwise minimum keeps the matrix symmetric.
    """
    thresholds = np.ascontiguousarray(thresholds, dtype=np.float64)
    if thresholds.shape != (distances.size,):
        raise SizeMismatch(
            f"{thresholds.shape[0]} thresholds for a size-{distances.size} matrix")
    if np.any(thresholds < 0):
        raise NegativeThreshold("local thresholds must be >= 0")
    packed = _kernels.pack_recurrence(distances.values, thresholds)
    return RecurrenceMatrix(distances.size, packed, float("nan"))


def overlay(a: RecurrenceMatrix, b: RecurrenceMatrix) -> OverlayMatrix:
    """Combine two recurrence matrices into one categorical matrix."""
    if a.size != b.size:
        raise SizeMismatch(f"sizes {a.size} and {b.size} differ")
    return OverlayMatrix(a.to_array() + 2 * b.to_array())


def recurrence_rate(rp: RecurrenceMatrix) -> float:
    """Fraction of recurrent cells over all M^2, in [0, 1]."""
    return rp.count_ones() / float(rp.size * rp.size)


def to_text_grid(rp: RecurrenceMatrix) -> str:
    """Rows of 0/1 characters, one matrix row per line, row 0 first."""
    dense = rp.to_array()
    return "\n".join("".join("1" if v else "0" for v in row) for row in dense) + "\n"


def distance_to_csv(dm: DistanceMatrix) -> str:
    """Comma-separated matrix of distances, 17 significant digits."""
    return "\n".join(
        ",".join(f"{v:.17g}" for v in row) for row in dm.values
    ) + "\n"
