import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from legkit.errors import DomainError, FunctionEvaluationError
from legkit.exactpoly import ExactPoly
from legkit.functions import FunctionSpec, builtin
from legkit.legendre import legendre_poly
from legkit.serialize import dumps
from legkit.series import SeriesExpansion, evaluate, project, project_exact, sample_curve, tail_energy


def test_projection_of_p3_is_unit_vector():
    s = project(builtin("P3"), 6)
    want = np.zeros(7)
    want[3] = 1.0
    assert np.allclose(s.coeffs, want, atol=1e-14)


def test_x_squared():
    # x^2 = P0/3 + 2 P2/3
    s = project(builtin("x^2"), 4)
    assert np.allclose(s.coeffs, [1 / 3, 0, 2 / 3, 0, 0], rtol=0, atol=1e-14)
    assert project_exact(ExactPoly.monomial(2)) == [Fraction(1, 3), 0, Fraction(2, 3)]


def test_exact_projection_odd_powers():
    assert project_exact(ExactPoly.monomial(3)) == [0, Fraction(3, 5), 0, Fraction(2, 5)]
    assert project_exact(ExactPoly.monomial(5))[5] == Fraction(8, 63)
    assert project_exact(ExactPoly.monomial(2), N=5)[3:] == [0, 0, 0]


def test_exact_projection_reconstructs():
    p = ExactPoly([Fraction(1, 3), -2, 0, 5, Fraction(-7, 4)])
    for basis, interval in (("legendre", None), ("shifted", None), ("mapped", (Fraction(-2), Fraction(3)))):
        cs = project_exact(p, basis, interval)
        from legkit.series import _exact_basis_poly

        iv = interval or {"legendre": (-1, 1), "shifted": (0, 1)}[basis]
        total = ExactPoly()
        for n, c in enumerate(cs):
            total = total + c * _exact_basis_poly(basis, iv, n)
        assert total == p


def test_sign_gibbs_behaviour():
    s = project(builtin("sign"), 49)
    assert abs(s(0.0)) <= 0.02
    assert abs(s(0.5) - 1) <= 0.05
    assert abs(s(-0.5) + 1) <= 0.05
    # odd function: even coefficients vanish
    assert np.max(np.abs(s.coeffs[::2])) <= 1e-14


def test_sign_coefficients_closed_form():
    # a_{2k+1} = (-1)^k (4k+3) (2k)! / (2^(2k+1) k! (k+1)!)
    from math import factorial

    s = project(builtin("sign"), 15)
    for k in range(8):
        want = (-1) ** k * (4 * k + 3) * factorial(2 * k) / (2 ** (2 * k + 1) * factorial(k) * factorial(k + 1))
        assert s.coeffs[2 * k + 1] == pytest.approx(want, abs=1e-14)


def test_parseval_for_sign():
    # ||sign||^2 = 2, the tail plus head must not exceed it
    s = project(builtin("sign"), 49)
    assert tail_energy(s, 0) <= 2.0
    assert tail_energy(s, 0) == pytest.approx(2.0, abs=0.03)


@given(st.lists(st.floats(-3, 3), min_size=1, max_size=16))
def test_polynomials_reproduced(cs):
    p = ExactPoly(cs)
    s = project(FunctionSpec.polynomial(p), 15)
    xs = np.linspace(-1, 1, 50)
    scale = max(1.0, sum(abs(c) for c in cs))
    assert np.max(np.abs(s(xs) - p(xs))) <= 1e-11 * scale


def test_mapped_and_shifted_bases():
    f = builtin("exp", (2.0, 5.0))
    s = project(f, 20)
    assert s.basis == "mapped"
    xs = np.linspace(2, 5, 9)
    assert np.allclose(s(xs), np.exp(xs), rtol=1e-12)
    g = project(builtin("cos", (0.0, 1.0)), 12)
    assert g.basis == "shifted"
    assert np.allclose(g(xs / 5), np.cos(xs / 5), atol=1e-13)


def test_orthonormal_coefficients_preserve_energy():
    s = project(builtin("exp"), 20)
    assert np.sum(s.orthonormal_coeffs() ** 2) == pytest.approx(tail_energy(s, 0), rel=1e-14)
    assert tail_energy(s, 0) == pytest.approx((np.exp(2) - np.exp(-2)) / 2, rel=1e-13)


def test_evaluate_outside_interval():
    s = project(builtin("x"), 2)
    with pytest.raises(DomainError):
        evaluate(s, 1.5)


def test_bare_callable_needs_interval():
    with pytest.raises(DomainError):
        project(np.cos, 3)
    s = project(np.cos, 3, interval=(-1.0, 1.0))
    assert s.N == 3


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_failing_function_reports_node():
    with pytest.raises(FunctionEvaluationError):
        project(FunctionSpec.from_callable(lambda x: np.log(np.asarray(x) + 0.5)), 4)


def test_json_round_trip_and_curve():
    s = project(builtin("abs"), 10)
    assert SeriesExpansion.from_json(json.loads(dumps(s.to_json()))) == s
    rows = sample_curve(s, 5, builtin("abs"))
    assert rows.shape == (5, 3)
    assert rows[0, 0] == -1.0 and rows[-1, 0] == 1.0


def test_basis_interval_mismatch():
    with pytest.raises(DomainError):
        SeriesExpansion("legendre", (0.0, 1.0), [1.0])


def test_legendre_poly_exact_expansion_identity():
    assert project_exact(legendre_poly(6)) == [0] * 6 + [1]
