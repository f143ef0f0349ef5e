"""Backend selection for the hot matrix kernels.

The compiled extension is used when it imported cleanly; otherwise the numpy
fallback takes over with identical results. Set ``RECURPLOT_FORCE_NUMPY=1``
to skip the extension (used by the benchmark and the equivalence tests).
"""

import os

from . import _numpy

if os.environ.get("RECURPLOT_FORCE_NUMPY"):
    _impl = _numpy
    BACKEND = "numpy"
else:
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _numpy
        BACKEND = "numpy"

pairwise_distances = _impl.pairwise_distances
pack_recurrence = _impl.pack_recurrence
transition_scores = _impl.transition_scores

__all__ = [
    "BACKEND",
    "pairwise_distances",
    "pack_recurrence",
    "transition_scores",
]
