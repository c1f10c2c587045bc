"""Benchmark the compiled kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeats N]

Times the three hot kernels (Jacobi eigensolver, dyadic expectation
ladder, Haar transform round trip) on representative workloads and prints
one table row per kernel and backend, plus the speedup.
"""

import argparse
import time

import numpy as np

from normlab._kernels import _pykernels

try:
    from normlab._kernels import _core
except ImportError:
    _core = None


def time_call(fn, *args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_jacobi(impl, matrices, repeats):
    def run():
        for a in matrices:
            impl.jacobi_hermitian(a, 1e-12, 60)

    return time_call(run, repeats=repeats)


def bench_ladder(impl, arrays, repeats):
    def run():
        for v in arrays:
            impl.expectation_ladder(v)

    return time_call(run, repeats=repeats)


def bench_haar(impl, arrays, repeats):
    def run():
        for v in arrays:
            impl.haar_inverse(impl.haar_forward(v))

    return time_call(run, repeats=repeats)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    matrices = []
    for _ in range(60):
        n = int(rng.integers(4, 17))
        b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        matrices.append((b + b.conj().T) / 2)
    arrays = [rng.standard_normal(1 << int(rng.integers(6, 13))) for _ in range(400)]

    workloads = [
        ("jacobi_hermitian (60 matrices, n<=16)", bench_jacobi, matrices),
        ("expectation_ladder (400 arrays, <=4096)", bench_ladder, arrays),
        ("haar round trip (400 arrays, <=4096)", bench_haar, arrays),
    ]

    print(f"{'kernel':42s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, bench, data in workloads:
        t_py = bench(_pykernels, data, args.repeats)
        if _core is not None:
            t_c = bench(_core, data, args.repeats)
            print(f"{name:42s} {t_py*1e3:9.2f}ms {t_c*1e3:9.2f}ms {t_py/t_c:7.1f}x")
        else:
            print(f"{name:42s} {t_py*1e3:9.2f}ms {'-':>10s} {'-':>8s}")
    if _core is None:
        print("compiled backend not available; build with pip install -e .")


if __name__ == "__main__":
    main()
