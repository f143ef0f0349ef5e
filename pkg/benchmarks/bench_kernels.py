#!/usr/bin/env python3
"""Benchmark the compiled matrix kernels against the numpy fallback.

Runs each kernel (and the assembled series-to-plot pipeline) at several
matrix sizes, checks the backends agree bit for bit, and prints a timing
table. Usage:

    python benchmarks/bench_kernels.py [--sizes 256,1024,1460] [--repeat 5]
"""

import argparse
import time

import numpy as np

from recurplot._kernels import _numpy

try:
    from recurplot._kernels import _core
except ImportError:
    _core = None


def best_of(repeat, fn, *args):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_size(n, repeat):
    rng = np.random.default_rng(n)
    values = 1.3 + np.cumsum(rng.normal(0, 0.003, size=n))
    states = np.ascontiguousarray(values[:, None])
    window = 30

    rows = []
    backends = [("numpy", _numpy)] + ([("compiled", _core)] if _core else [])
    results = {}
    for name, impl in backends:
        t_dist, dist = best_of(repeat, impl.pairwise_distances, states)
        thresholds = np.full(n, np.std(values))
        t_pack, packed = best_of(repeat, impl.pack_recurrence, dist, thresholds)
        dense = np.unpackbits(packed, axis=1, count=n)
        t_scores, scores = best_of(repeat, impl.transition_scores, dense, window)
        total = t_dist + t_pack + t_scores
        rows.append((name, t_dist, t_pack, t_scores, total))
        results[name] = (dist, packed, scores)

    if _core:
        for a, b in zip(results["numpy"], results["compiled"]):
            assert np.array_equal(a, b), "backends disagree"

    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="256,1024,1460",
                        help="comma-separated matrix sizes")
    parser.add_argument("--repeat", type=int, default=5,
                        help="keep the best of this many runs")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _core is None:
        print("compiled core not built; timing the numpy fallback only\n")

    header = (f"{'size':>6} {'backend':>9} {'distances':>11} "
              f"{'packing':>11} {'scores':>11} {'total':>11}")
    print(header)
    print("-" * len(header))
    for n in sizes:
        rows = bench_size(n, args.repeat)
        for name, t_dist, t_pack, t_scores, total in rows:
            print(f"{n:>6} {name:>9} {t_dist * 1e3:>9.2f}ms "
                  f"{t_pack * 1e3:>9.2f}ms {t_scores * 1e3:>9.2f}ms "
                  f"{total * 1e3:>9.2f}ms")
        if len(rows) == 2:
            speedup = rows[0][4] / rows[1][4]
            print(f"{'':>6} {'speedup':>9} {'':>11} {'':>11} {'':>11} "
                  f"{speedup:>10.1f}x")
    if _core:
        print("\nbackends agree bit for bit on every case above")


if __name__ == "__main__":
    main()
