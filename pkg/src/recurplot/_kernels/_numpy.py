"""Pure-numpy kernels, the fallback when the compiled core is unavailable.

Bit-for-bit interchangeable with ``_core``: the accumulation order in the
distance kernel and the integer integral image in the score kernel are chosen
so both backends produce identical bytes.
"""

import numpy as np


def pairwise_distances(states: np.ndarray) -> np.ndarray:
    """Dense symmetric Euclidean distances between state vectors.

    ``states`` is (M, m); one dimension uses the plain absolute difference.
    """
    states = np.ascontiguousarray(states, dtype=np.float64)
    n, dim = states.shape
    if dim == 1:
        x = states[:, 0]
        return np.abs(x[:, None] - x[None, :])
    # accumulate one coordinate at a time: same addition order as the
    # compiled kernel's inner loop
    acc = np.zeros((n, n))
    for k in range(dim):
        d = states[:, k, None] - states[None, :, k]
        acc += d * d
    return np.sqrt(acc)


def pack_recurrence(distances: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    """Bit-packed recurrence bits: (i, j) set iff d[i,j] <= min(t[i], t[j]).

    Rows packed MSB-first (numpy ``packbits`` convention), zero padding.
    """
    t = np.minimum(thresholds[:, None], thresholds[None, :])
    return np.packbits(distances <= t, axis=1)


def transition_scores(rp: np.ndarray, window: int) -> np.ndarray:
    """Block-dissimilarity score at each candidate split of a binary matrix.

    For split j, compares the two flanking window x window diagonal blocks
    with the cross block between them:

        s(j) = mean(rp[A, A]) + mean(rp[B, B]) - 2 * mean(rp[A, B])

    with A = [j-window, j) and B = [j, j+window). Returns scores for
    j = window .. M-window-1 (length M - 2*window).
    """
    n = rp.shape[0]
    w = window
    # integral image in exact integer arithmetic
    s = np.zeros((n + 1, n + 1), dtype=np.int64)
    np.cumsum(np.cumsum(rp, axis=0, dtype=np.int64), axis=1, out=s[1:, 1:])

    def block(r0, r1, c0, c1):
        return s[r1, c1] - s[r0, c1] - s[r1, c0] + s[r0, c0]

    j = np.arange(w, n - w)
    left = block(j - w, j, j - w, j)
    right = block(j, j + w, j, j + w)
    cross = block(j - w, j, j, j + w)
    return (left + right - 2 * cross) / float(w * w)
