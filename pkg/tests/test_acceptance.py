"""Acceptance criteria, one check per criterion at its stated tolerance.

Run with pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python3 tests/test_acceptance.py``.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from legkit import beukers, legendre, quadrature, series, shifted, sphere
from legkit.exactpoly import ExactPoly
from legkit.functions import FunctionSpec, builtin

RESULTS = {}


def c1_exact_representations():
    legendre.legendre_poly.cache_clear()
    t0 = time.perf_counter()
    bad = []
    for n in range(41):
        ref = shifted.shifted_coeffs(n)
        others = (shifted.shifted_from_substitution(n), shifted.shifted_rodrigues(n), shifted.shifted_leibniz(n))
        if any(o != ref for o in others) or not all(isinstance(c, int) for c in ref.coeffs):
            bad.append(("shifted", n))
        if legendre.coeffs_explicit(n) != legendre.coeffs_rodrigues(n):
            bad.append(("legendre", n))
    dt = time.perf_counter() - t0
    return not bad and dt <= 10.0, f"mismatches={bad} runtime={dt:.2f}s (limit 10s)"


def c2_orthonormality():
    bad = []
    for m in range(21):
        pm, sm = legendre.legendre_poly(m), shifted.shifted_coeffs(m).to_exact()
        for n in range(21):
            pn, sn = legendre.legendre_poly(n), shifted.shifted_coeffs(n).to_exact()
            if (pm * pn).integrate(-1, 1) != (Fraction(2, 2 * n + 1) if m == n else 0):
                bad.append(("P", m, n))
            if (sm * sn).integrate(0, 1) != (Fraction(1, 2 * n + 1) if m == n else 0):
                bad.append(("P~", m, n))
    return not bad, f"failures={bad[:5]}"


def c3_ode_residual():
    bad = [n for n in range(31) if not legendre.ode_residual(n).is_zero()]
    return not bad, f"nonzero residual for n={bad}"


def c4_quadrature_exactness():
    t0 = time.perf_counter()
    worst_exact = 0.0
    not_sharp = {}
    for n in range(2, 21):
        rule = quadrature.build_rule(n)
        for k in range(2 * n + 1):
            exact = 2.0 / (k + 1) if k % 2 == 0 else 0.0
            err = abs(quadrature.integrate(rule, lambda x, k=k: x**k) - exact)
            if k <= 2 * n - 1:
                worst_exact = max(worst_exact, err)
            elif err <= 1e-10:
                not_sharp[n] = err
    dt = time.perf_counter() - t0
    ok = worst_exact <= 1e-13 and not not_sharp and dt <= 5.0
    sharp = ", ".join(f"n={n}: {e:.3g}" for n, e in not_sharp.items())
    return ok, (
        f"max error k<=2n-1: {worst_exact:.3g} (tol 1e-13); "
        f"k=2n error not above 1e-10 for [{sharp}]; runtime={dt:.2f}s (limit 5s)"
    )


def c5_root_structure():
    bad = []
    worst = 0.0
    prev = np.array([])
    for n in range(1, 101):
        r = quadrature.legendre_roots(n)
        if len(r) != n or not np.all(np.diff(r) > 0) or not np.all(np.abs(r) < 1):
            bad.append((n, "shape/order"))
        if n > 1 and not (np.all(r[:-1] < prev) and np.all(prev < r[1:])):
            bad.append((n, "interleave"))
        res = float(np.max(np.abs(legendre.eval_recurrence(n, r))))
        worst = max(worst, res)
        if res > 1e-13:
            bad.append((n, f"residual {res:.3g}"))
        prev = r
    return not bad, f"failures={bad[:5]} worst residual={worst:.3g} (tol 1e-13)"


def c6_moments():
    bad = []
    for n in range(26):
        f = math.factorial
        want = Fraction(2 ** (n + 1) * f(n) ** 2, f(2 * n + 1))
        if (ExactPoly.monomial(n) * legendre.legendre_poly(n)).integrate(-1, 1) != want:
            bad.append(("P", n))
        want = Fraction((-1) ** n * f(n) ** 2, f(2 * n + 1))
        if shifted.shifted_moment_exact(n) != want:
            bad.append(("P~", n))
    return not bad, f"failures={bad}"


def c7_fourier_legendre():
    s = series.project(builtin("sign"), 49)
    at0, atp, atm = s(0.0), s(0.5), s(-0.5)
    ok_sign = abs(at0) <= 0.02 and abs(atp - 1) <= 0.05 and abs(atm + 1) <= 0.05
    rng = np.random.default_rng(20240601)
    xs = np.linspace(-1, 1, 50)
    worst = 0.0
    for deg in range(16):
        for _ in range(4):
            cs = [Fraction(int(v), 64) for v in rng.integers(-256, 257, size=deg + 1)]
            cs[-1] = cs[-1] or Fraction(1)
            p = ExactPoly(cs)
            approx = series.project(FunctionSpec.polynomial(p), deg)(xs)
            exact = np.array([float(p.evaluate(Fraction(x))) for x in xs])
            worst = max(worst, float(np.max(np.abs(approx - exact))))
    ok = ok_sign and worst <= 1e-11
    return ok, f"sign: S(0)={at0:.3g} S(0.5)={atp:.4f} S(-0.5)={atm:.4f}; polynomial max error={worst:.3g} (tol 1e-11)"


def c8_bvp():
    a = 1.0
    sol = sphere.solve_exterior(sphere.BoundaryData(a, np.cos), 10)
    c1_err = abs(sol.coeffs[1] - 1.0)
    others = float(np.max(np.abs(np.delete(sol.coeffs, 1))))
    v = sphere.eval_potential(sol, 2 * a, 0.0)
    worst_ratio = 0.0
    for n in range(9):
        cs = np.zeros(n + 1)
        cs[n] = 1.0
        mode = sphere.SphereSolution(a, cs)
        ratio = sphere.eval_potential(mode, 2 * a, 0.4) / sphere.eval_potential(mode, 4 * a, 0.4)
        worst_ratio = max(worst_ratio, abs(ratio - 2 ** (n + 1)))
    ok = c1_err <= 1e-12 and others <= 1e-12 and abs(v - 0.25) <= 1e-12 and worst_ratio <= 1e-12
    return ok, (
        f"|c1-1|={c1_err:.3g} max|c_other|={others:.3g} V(2a,0)={v!r} "
        f"max|ratio-2^(n+1)|={worst_ratio:.3g}"
    )


def c9_beukers():
    names = ("1", "const:3/2", "x", "x^2", "x^5", "exp", "sin", "cos", "inv1p")
    worst = 0.0
    for name in names:
        f = beukers.smooth_builtin(name)
        for n in range(7):
            worst = max(worst, abs(beukers.ibp_left(n, f) - beukers.ibp_right(n, f)))
    exp = beukers.smooth_builtin("exp")
    over = []
    for n in range(11):
        val = abs(beukers.ibp_left(n, exp))
        if val > beukers.bound_In(n, beukers.CANONICAL_M, math.e).bound:
            over.append(n)
    return worst <= 1e-11 and not over, f"max |left-right|={worst:.3g} (tol 1e-11); bound violated for n={over}"


def c10_two_adic():
    def legendre_formula(n):
        e, p = 0, 2
        while p <= n:
            e += n // p
            p *= 2
        return e

    def brute(n):
        f, e = math.factorial(n), 0
        while f % 2 == 0:
            f //= 2
            e += 1
        return e

    bad = [n for n in range(41) if not (2 ** legendre.two_adic_scaling(n) * legendre.legendre_poly(n)).is_integral()]
    bad += [n for n in range(21) if not legendre.two_adic_scaling(n) == legendre_formula(n) == brute(n)]
    return not bad, f"failures for n={bad}"


CRITERIA = [
    ("1 exact representation equality", c1_exact_representations),
    ("2 orthonormality", c2_orthonormality),
    ("3 ODE residual", c3_ode_residual),
    ("4 quadrature exactness and sharpness", c4_quadrature_exactness),
    ("5 root structure", c5_root_structure),
    ("6 moment identities", c6_moments),
    ("7 Fourier-Legendre convergence", c7_fourier_legendre),
    ("8 exterior BVP", c8_bvp),
    ("9 integration by parts and bound", c9_beukers),
    ("10 2-adic scaling", c10_two_adic),
]


def _line(label, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {label}: {detail}"


@pytest.mark.acceptance
@pytest.mark.parametrize("label, check", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(label, check):
    ok, detail = check()
    line = _line(label, ok, detail)
    RESULTS[label] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for label, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(label, ok, detail))
    raise SystemExit(1 if failed else 0)
