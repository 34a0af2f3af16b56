"""The numba kernels and their numpy twins must agree bit for bit or to rounding."""
import numpy as np
import pytest

from legkit import _accel, kernels
from legkit.quadrature import root_brackets

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def test_backend_flag():
    assert kernels.BACKEND in ("numba", "numpy")
    assert (kernels.BACKEND == "numba") == _accel.USE_NUMBA


def test_numpy_table_matches_three_term_by_hand():
    x = np.array([-0.7, 0.0, 0.4])
    t = kernels.np_legendre_table(3, x)
    assert np.allclose(t[2], 1.5 * x**2 - 0.5, atol=1e-15)
    assert np.allclose(t[3], 2.5 * x**3 - 1.5 * x, atol=1e-15)


def test_series_matches_table():
    x = np.linspace(-1, 1, 21)
    c = np.array([0.5, -1.0, 0.25, 2.0, 0.0, -0.125])
    want = c @ kernels.np_legendre_table(5, x)
    assert np.allclose(kernels.np_legendre_series(c, x), want, atol=1e-14)


@needs_numba
def test_table_backends_agree():
    x = np.linspace(-1, 1, 101)
    assert np.array_equal(kernels.np_legendre_table(30, x), kernels.nb_legendre_table(30, x))


@needs_numba
def test_pair_backends_agree():
    x = np.linspace(-1, 1, 57)
    for n in (1, 2, 9, 40):
        p1, q1 = kernels.np_legendre_pair(n, x)
        p2, q2 = kernels.nb_legendre_pair(n, x)
        assert np.array_equal(p1, p2) and np.array_equal(q1, q2)


@needs_numba
def test_series_backends_agree():
    rng = np.random.default_rng(1)
    c = rng.normal(size=25)
    x = np.linspace(-1, 1, 33)
    assert np.array_equal(kernels.np_legendre_series(c, x), kernels.nb_legendre_series(c, x))


@needs_numba
@pytest.mark.parametrize("n", [2, 5, 16, 37])
def test_root_kernels_agree(n):
    br = root_brackets(n)
    lo = np.array([b.lo for b in br])
    hi = np.array([b.hi for b in br])
    a, ia = kernels.np_polish_roots(n, lo, hi, 1e-14, 1e-15, 100)
    b, ib = kernels.nb_polish_roots(n, lo, hi, 1e-14, 1e-15, 100)
    assert np.all(ia > 0) and np.all(ib > 0)
    assert np.max(np.abs(a - b)) <= 4e-16
    ra = kernels.np_refine_roots(n, a, 2)
    rb = kernels.nb_refine_roots(n, b, 2)
    assert np.array_equal(ra, rb)


def test_refinement_gives_correctly_rounded_roots():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.prec = 200
    n = 12
    br = root_brackets(n)
    lo = np.array([b.lo for b in br])
    hi = np.array([b.hi for b in br])
    x = kernels.refine_roots(n, kernels.polish_roots(n, lo, hi, 1e-14, 1e-15, 100)[0])
    for r in x:
        t = mpmath.mpf(float(r))
        for _ in range(6):
            p, q = mpmath.legendre(n, t), mpmath.legendre(n - 1, t)
            t -= p * (1 - t * t) / (n * (q - t * p))
        assert float(t) == r
