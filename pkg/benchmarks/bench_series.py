"""Benchmark the compiled series kernels against the pure-Python twin.

Run:  python benchmarks/bench_series.py
"""

import time

import numpy as np

from spineq import _series_py

try:
    from spineq import _series
except ImportError:
    _series = None


def sweep_2f1(kernel, points):
    acc = 0.0
    for a, b, c, z in points:
        val, n, est = kernel.hyp2f1_series(a, b, c, z)
        acc += abs(val)
    return acc


def sweep_1f1(kernel, points):
    acc = 0.0
    for a, c, z in points:
        val, n, est = kernel.hyp1f1_series(a, c, z)
        acc += abs(val)
    return acc


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(7)
    pts_2f1 = [
        (
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
            complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)),
            complex(rng.uniform(-0.85, 0.85), rng.uniform(-0.3, 0.3)),
        )
        for _ in range(2000)
    ]
    pts_1f1 = [
        (
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
            complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)),
            complex(rng.uniform(-4, 4), rng.uniform(-4, 4)),
        )
        for _ in range(2000)
    ]

    rows = []
    t_py = timeit(sweep_2f1, _series_py, pts_2f1)
    rows.append(("2F1 series", "pure Python", t_py, 1.0))
    if _series is not None:
        t_c = timeit(sweep_2f1, _series, pts_2f1)
        rows.append(("2F1 series", "compiled", t_c, t_py / t_c))
    t_py = timeit(sweep_1f1, _series_py, pts_1f1)
    rows.append(("1F1 series", "pure Python", t_py, 1.0))
    if _series is not None:
        t_c = timeit(sweep_1f1, _series, pts_1f1)
        rows.append(("1F1 series", "compiled", t_c, t_py / t_c))

    print(f"{'kernel':<12} {'backend':<12} {'time (2000 evals)':>18} {'speedup':>9}")
    for name, backend, t, speedup in rows:
        print(f"{name:<12} {backend:<12} {t * 1e3:>15.2f} ms {speedup:>8.1f}x")
    if _series is None:
        print("\ncompiled kernels not available; showing pure Python only")

    # agreement check between the two backends
    if _series is not None:
        worst = 0.0
        for a, b, c, z in pts_2f1[:200]:
            v1, _, _ = _series.hyp2f1_series(a, b, c, z)
            v2, _, _ = _series_py.hyp2f1_series(a, b, c, z)
            worst = max(worst, abs(v1 - v2) / max(abs(v1), 1e-300))
        print(f"\nbackend agreement (2F1, 200 points): max rel diff {worst:.2e}")


if __name__ == "__main__":
    main()
