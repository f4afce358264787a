"""Benchmark the compiled scoring kernel against the numpy fallback.

Usage: python benchmarks/bench_kernel.py [--cases N] [--repeats R]
"""

import argparse
import time

import numpy as np

from docketd import kernel
from docketd.weights import AgingPolicy, DEFAULT_COEFFICIENTS


def make_inputs(n: int, seed: int = 42):
    rng = np.random.default_rng(seed)
    features = rng.random((n, 5))
    coeffs = np.array(DEFAULT_COEFFICIENTS)
    pendency = rng.integers(0, 2000, n)
    return features, coeffs, pendency


def bench(fn, features, coeffs, pendency, policy, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(features, coeffs, pendency, policy.threshold_days, policy.multiplier, policy.cap)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cases", type=int, default=100_000)
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    features, coeffs, pendency = make_inputs(args.cases)
    policy = AgingPolicy()

    candidates = [("numpy", kernel._batch_weights_numpy)]
    if kernel.IMPLEMENTATION == "cython":
        candidates.insert(0, ("cython", kernel._speedups.batch_weights))
    else:
        print("compiled extension not available; benchmarking fallback only")

    results = {}
    for name, fn in candidates:
        results[name] = bench(fn, features, coeffs, pendency, policy, args.repeats)

    # correctness cross-check before reporting numbers
    if len(candidates) == 2:
        a = candidates[0][1](features, coeffs, pendency, policy.threshold_days, policy.multiplier, policy.cap)
        b = candidates[1][1](features, coeffs, pendency, policy.threshold_days, policy.multiplier, policy.cap)
        assert np.allclose(a[0], b[0], atol=1e-12) and np.allclose(a[1], b[1], atol=1e-12)

    print(f"batch_weights over {args.cases:,} cases (best of {args.repeats}):")
    for name, seconds in results.items():
        rate = args.cases / seconds / 1e6
        print(f"  {name:>6}: {seconds * 1e3:8.2f} ms  ({rate:.1f} M cases/s)")
    if "cython" in results and "numpy" in results:
        print(f"  speedup: {results['numpy'] / results['cython']:.2f}x")


if __name__ == "__main__":
    main()
