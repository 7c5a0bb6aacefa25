"""Timing comparison of the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from ecaliquot.backends import _pykernels

try:
    from ecaliquot.backends import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    p = 9973
    s = rng.integers(0, p, size=2000)
    t = rng.integers(0, p, size=2000)
    yield "legendre_table(9973)", lambda m: m.legendre_table(p)
    yield "trace_batch(9973, 2000 curves)", lambda m: m.trace_batch(p, s, t)
    yield "order_counts(499)", lambda m: m.order_counts(499)
    yield "kronecker_table(-4, 100000)", lambda m: m.kronecker_table(-4, 100000)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"{'kernel':38s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, call in cases():
        py = best_of(lambda: call(_pykernels), args.repeats)
        if _ckernels is None:
            print(f"{name:38s} {py * 1e3:9.2f}ms  (compiled backend unavailable)")
            continue
        cc = best_of(lambda: call(_ckernels), args.repeats)
        print(f"{name:38s} {py * 1e3:9.2f}ms {cc * 1e3:9.2f}ms {py / cc:7.1f}x")


if __name__ == "__main__":
    main()
