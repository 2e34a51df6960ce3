#!/usr/bin/env python3
"""Benchmark: compiled Cython kernels vs the pure-Python/numpy reference.

Times the hot paths behind the frequency solver (dense residual scans and
scalar residual evaluations inside bisection) and the open-ended series
evaluation.  Run from the repo root:

    python3 benchmarks/bench_kernels.py [--repeats 7]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from dipole_landau._core import reference

try:
    from dipole_landau._core import _compiled
except ImportError:
    _compiled = None


def timeit(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    eff = np.geomspace(1e-3, 1e3, 8192)
    m, d, a, b, tau = 1.0, 1.0, 1.0, 1.0, 1.4142135623730951
    t1 = 2.0 * tau + 1.0
    scalar_ws = np.geomspace(0.5, 50.0, 2000)
    s_demo = 1.0 * t1 - 2.0 * 1.0  # theta = mu = 1

    cases = [
        (
            "residual_scan  n=1, 8192 pts",
            lambda impl: impl.residual_scan(eff, m, d, a, b, tau, 1),
        ),
        (
            "residual_scan  n=6, 8192 pts",
            lambda impl: impl.residual_scan(eff, m, d, a, b, tau, 6),
        ),
        (
            "scalar residual x2000 (bisection path)",
            lambda impl: [
                impl.truncation_tail(
                    tau, 2.0 * m * b / (w * w**0.5), impl.coupling_combo(m, d, a, b, w, t1), 3
                )
                for w in scalar_ws
            ],
        ),
        (
            "heun_coefficients count=64 x500",
            lambda impl: [impl.heun_coefficients(tau, 1.0, s_demo, 7.5, 64) for _ in range(500)],
        ),
        (
            "eval_series_free y=4.0 x500",
            lambda impl: [
                impl.eval_series_free(tau, 1.0, s_demo, 3.0, 4.0, 1e-14, 10000)
                for _ in range(500)
            ],
        ),
    ]

    print(f"{'kernel':36s} {'python':>12s} {'compiled':>12s} {'speedup':>9s}")
    for label, runner in cases:
        t_py = timeit(lambda: runner(reference), args.repeats)
        if _compiled is None:
            print(f"{label:36s} {t_py * 1e3:10.3f} ms {'n/a':>12s} {'n/a':>9s}")
            continue
        t_cy = timeit(lambda: runner(_compiled), args.repeats)
        print(
            f"{label:36s} {t_py * 1e3:10.3f} ms {t_cy * 1e3:10.3f} ms {t_py / t_cy:8.1f}x"
        )
    if _compiled is None:
        print("\ncompiled extension not available; install with Cython to compare")


if __name__ == "__main__":
    main()
