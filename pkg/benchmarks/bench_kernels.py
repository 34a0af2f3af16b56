"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel is called once before timing so numba compilation is excluded.
"""
import argparse
import timeit

import numpy as np

from legkit import _accel, kernels
from legkit.quadrature import root_brackets


def cases():
    x = np.linspace(-1, 1, 20001)
    coeffs = np.random.default_rng(0).normal(size=200)
    n = 200
    br = root_brackets(n)
    lo = np.array([b.lo for b in br])
    hi = np.array([b.hi for b in br])
    return {
        "table nmax=60, 20k points": (
            lambda: kernels.np_legendre_table(60, x),
            lambda: kernels.nb_legendre_table(60, x),
        ),
        "series N=200, 20k points": (
            lambda: kernels.np_legendre_series(coeffs, x),
            lambda: kernels.nb_legendre_series(coeffs, x),
        ),
        "polish roots n=200": (
            lambda: kernels.np_polish_roots(n, lo, hi, 1e-14, 1e-15, 100),
            lambda: kernels.nb_polish_roots(n, lo, hi, 1e-14, 1e-15, 100),
        ),
        "refine roots n=200": (
            lambda: kernels.np_refine_roots(n, 0.5 * (lo + hi), 2),
            lambda: kernels.nb_refine_roots(n, 0.5 * (lo + hi), 2),
        ),
    }


def best(func, repeat):
    func()  # warmup / JIT
    number = 3
    return min(timeit.repeat(func, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':32s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, (np_fn, nb_fn) in cases().items():
        t_np = best(np_fn, args.repeat)
        t_nb = best(nb_fn, args.repeat)
        print(f"{name:32s} {t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
