#!/usr/bin/env python3
"""Benchmark the compiled core against the pure-numpy fallback.

Times the three primitives that dominate kernel sweeps (log-Gamma over an
array, the affine log-sum-exp kernel reduction, the Mittag-Leffler series)
plus one end-to-end kernel profile.

Usage:
    python benchmarks/bench_backends.py [--repeats 5] [--p 1500] [--radii 400]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import bergkernel
from bergkernel import _backend
from bergkernel.kernel import kernel_evaluator
from bergkernel.models import spindle_model


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_suite(p: int, n_radii: int, repeats: int) -> dict[str, float]:
    rng = np.random.default_rng(7)
    xs = rng.uniform(0.5, 5e4, size=1_000_000)
    coeffs = -np.sort(rng.uniform(0.0, 500.0, size=4096))
    radii = np.geomspace(0.05, 5.0, n_radii)
    model = spindle_model(0.5, 0.25)
    impl = _backend.impl

    def bench_kernel_profile():
        evaluate = kernel_evaluator(model, p)
        for r in radii:
            evaluate(float(r))

    def bench_ml():
        from bergkernel.specfn import MLParams, mittag_leffler

        params = MLParams(2.0, 0.75)
        for z in np.linspace(0.0, 400.0, 2000):
            mittag_leffler(params, float(z))

    return {
        "lgamma_vec(1e6)": _time(lambda: impl.lgamma_vec(xs), repeats),
        "lse_affine(4096) x 1000": _time(
            lambda: [impl.lse_affine(coeffs, t) for t in np.linspace(-3, 3, 1000)], repeats
        ),
        "mittag_leffler x 2000": _time(bench_ml, repeats),
        f"kernel profile p={p}, {n_radii} radii": _time(bench_kernel_profile, repeats),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--p", type=int, default=1500)
    ap.add_argument("--radii", type=int, default=400)
    args = ap.parse_args()

    results: dict[str, dict[str, float]] = {}
    for name in bergkernel.available_backends():
        bergkernel.set_backend(name)
        results[name] = run_suite(args.p, args.radii, args.repeats)
    bergkernel.set_backend(bergkernel.available_backends()[0])

    names = list(results)
    width = max(len(k) for v in results.values() for k in v)
    header = f"{'benchmark':<{width}}  " + "  ".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for key in next(iter(results.values())):
        row = f"{key:<{width}}  " + "  ".join(f"{results[n][key]:>10.4f}s" for n in names)
        if len(names) == 2:
            row += f"  {results[names[1]][key] / results[names[0]][key]:>7.2f}x"
        print(row)


if __name__ == "__main__":
    main()
