#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python one.

Usage:  python3 benchmarks/bench_backends.py [--quick]

Times the hot kernels on representative inputs and prints one table row per
(kernel, input) pair.  Both backends are imported directly, so the script is
independent of the RRCR_PURE_PYTHON selection.
"""

import argparse
import time

import numpy as np

import rrcr
from rrcr import _kernels_py

try:
    from rrcr import _kernels_cy
except ImportError:
    _kernels_cy = None

from rrcr.sampler import RngSeed


def timeit(fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def benchmark_cases(quick):
    scale = 4 if quick else 1
    cases = []

    g_big = rrcr.sample_regular(100_000 // scale, 10, RngSeed(1))
    colours = rrcr.VertexPartition.singleton(g_big.n, 0).to_colouring().colour_of
    half = colours.copy()
    cases.append((f"refine_round  n={g_big.n} d=10",
                  lambda k: k.refine_round(g_big.indptr, g_big.indices, half)))

    g_mid = rrcr.sample_regular(1024, 16, RngSeed(2))
    cases.append((f"all_eccentricities  n={g_mid.n} d=16",
                  lambda k: k.all_eccentricities(g_mid.indptr, g_mid.indices)))

    g_tri = rrcr.sample_regular(4096 // scale, 24, RngSeed(3))
    cases.append((f"triangle_counts  n={g_tri.n} d=24",
                  lambda k: k.triangle_counts(g_tri.indptr, g_tri.indices)))

    rows = np.tile(np.repeat(np.arange(16, dtype=np.int32), 4), (512, 1))
    np.random.default_rng(0).permuted(rows, axis=1, out=rows)
    cases.append(("first_simple_pairing  512 rows of G(16,4) stubs",
                  lambda k: k.first_simple_pairing(rows, 16)))

    src = np.zeros(1, dtype=np.int64)
    cases.append((f"bfs_distances  n={g_big.n} d=10",
                  lambda k: k.bfs_distances(g_big.indptr, g_big.indices, src)))
    return cases


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller inputs")
    args = parser.parse_args()

    cases = benchmark_cases(args.quick)
    width = max(len(name) for name, _ in cases)
    header = f"{'kernel / input':<{width}}  {'python':>10}  {'cython':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in cases:
        t_py = timeit(fn, _kernels_py)
        if _kernels_cy is None:
            print(f"{name:<{width}}  {t_py * 1e3:>8.2f}ms  {'n/a':>10}  {'n/a':>8}")
            continue
        t_cy = timeit(fn, _kernels_cy)
        print(f"{name:<{width}}  {t_py * 1e3:>8.2f}ms  {t_cy * 1e3:>8.2f}ms  "
              f"{t_py / t_cy:>7.1f}x")
    if _kernels_cy is None:
        print("\ncompiled backend not importable: showing pure-Python timings only")


if __name__ == "__main__":
    main()
