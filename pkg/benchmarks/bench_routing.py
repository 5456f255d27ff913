#!/usr/bin/env python3
"""Benchmark the nearest-centroid routing kernels: compiled vs numpy.

Usage: python benchmarks/bench_routing.py [--repeats 5]

Also times forest training and prediction end-to-end on a synthetic
multi-descriptor dataset under both kernels.
"""

import argparse
import os
import time

import numpy as np


def time_best(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(repeats):
    from caddy.ncmf import routing_py

    try:
        from caddy.ncmf import _routing
    except ImportError:
        print("compiled kernel not built; run pip install -e . first")
        return

    rng = np.random.default_rng(0)
    cases = [
        ("small nodes", 2_000, 3, 8),
        ("medium nodes", 20_000, 6, 16),
        ("wide descriptors", 50_000, 8, 64),
        ("many points", 200_000, 4, 16),
    ]
    print(f"{'case':<18} {'n':>8} {'c':>3} {'d':>3} {'numpy':>10} {'compiled':>10} {'speedup':>8}")
    for name, n, c, d in cases:
        points = rng.normal(size=(n, d))
        centroids = rng.normal(size=(c, d))
        base = routing_py.nearest_centroids(points, centroids)
        fast = _routing.nearest_centroids(points, centroids)
        assert np.array_equal(base, fast), f"kernel disagreement on {name}"
        t_py = time_best(lambda: routing_py.nearest_centroids(points, centroids), repeats)
        t_cy = time_best(lambda: _routing.nearest_centroids(points, centroids), repeats)
        print(
            f"{name:<18} {n:>8} {c:>3} {d:>3} "
            f"{t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms {t_py / t_cy:>7.2f}x"
        )


def bench_forest(repeats):
    # End-to-end: train + predict under each kernel selection. Kernel choice
    # is made at import, so this re-execs the interpreter per mode.
    import subprocess
    import sys

    snippet = (
        "import time, numpy as np;"
        "from caddy.ncmf import train, predict, ForestParams;"
        "from caddy.ncmf.data import gaussian_benchmark;"
        "from caddy.ncmf.routing import IMPLEMENTATION;"
        "data = gaussian_benchmark(8, 500, (16, 32), separation=6.0, seed=1);"
        "qs = gaussian_benchmark(8, 125, (16, 32), separation=6.0, seed=2);"
        "t0 = time.perf_counter();"
        "f = train(data, ForestParams(n_trees=8, max_depth=8, k=4, seed=0));"
        "t1 = time.perf_counter();"
        "[predict(f, s) for s in qs];"
        "t2 = time.perf_counter();"
        "print(f'{IMPLEMENTATION:>8}: train {t1-t0:6.2f}s  predict {t2-t1:6.2f}s')"
    )
    for mode in ("0", "1"):
        env = dict(os.environ, CADDY_PURE_PYTHON=mode)
        subprocess.run([sys.executable, "-c", snippet], env=env, check=True)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    print("== routing kernel ==", flush=True)
    bench_kernels(args.repeats)
    print("\n== forest end-to-end (4000 train samples, 8 classes) ==", flush=True)
    bench_forest(args.repeats)


if __name__ == "__main__":
    main()
