"""Benchmark the numba kernels against the pure-NumPy fallbacks.

Runs each hot kernel on representative problem sizes through both code
paths (calling the implementation pairs directly, so a single process can
compare them) and prints a timing table.  Usage:

    python benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from ballprolate import kernels
from ballprolate._backend import NUMBA_ENABLED


def timeit(fn, repeat):
    fn()  # warm-up (and numba compilation)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not NUMBA_ENABLED:
        print("numba backend is not active (BALLPROLATE_NUMBA=0 or numba missing);")
        print("timing the numpy path only.\n")

    rng = np.random.default_rng(0)

    cases = []

    # Jacobi series with derivatives: the radial-profile evaluation workload
    eta = rng.uniform(-1, 1, size=200_000)
    coef = rng.normal(size=40)
    a = rng.uniform(0.4, 0.6, size=39)
    b = rng.uniform(-0.1, 0.1, size=39)
    cases.append((
        "jacobi_series (200k pts, 40 coeffs)",
        lambda: kernels._jacobi_series_loops(eta, coef, a, b, 1.4, 2.0, 0.1),
        lambda: kernels._jacobi_series_numpy(eta, coef, a, b, 1.4, 2.0, 0.1),
    ))

    # tridiagonal QL with eigenvectors: the Bouwkamp solve workload
    n = 120
    dd = rng.normal(size=n) * 10
    ee = rng.normal(size=n)
    ee[-1] = 0.0

    def ql_loops():
        kernels._tql2_loops(dd.copy(), ee.copy(), np.eye(n))

    def ql_numpy():
        kernels._tql2_numpy(dd.copy(), ee.copy(), np.eye(n))

    cases.append((f"tridiag QL ({n}x{n} with eigenvectors)", ql_loops, ql_numpy))

    # finite Fourier quadrature sum: the verification workload
    points = rng.uniform(-0.5, 0.5, size=(64, 3))
    nodes = rng.uniform(-1, 1, size=(50_000, 3))
    wf = rng.normal(size=(50_000, 3)) + 1j * rng.normal(size=(50_000, 3))
    cases.append((
        "fourier_sum (64 pts x 50k nodes, vector)",
        lambda: kernels._ft_vector_loops(points, nodes, wf, -2.0),
        lambda: kernels._ft_numpy(points, nodes, wf, -2.0),
    ))

    print(f"{'kernel':45s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, with_numba, with_numpy in cases:
        t_np = timeit(with_numpy, args.repeat)
        if NUMBA_ENABLED:
            t_nb = timeit(with_numba, args.repeat)
            print(f"{name:45s} {t_nb * 1e3:9.2f}ms {t_np * 1e3:9.2f}ms "
                  f"{t_np / t_nb:7.2f}x")
        else:
            print(f"{name:45s} {'-':>10s} {t_np * 1e3:9.2f}ms {'-':>8s}")


if __name__ == "__main__":
    main()
