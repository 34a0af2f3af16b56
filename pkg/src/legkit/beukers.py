"""Integration by parts against shifted Legendre polynomials, and the |I_n| bound.

For f of class C^n on [0, 1],

    I_n = int_0^1 P~_n f dx = (-1)^n / n! * int_0^1 x^n (1-x)^n f^(n) dx,

hence |I_n| <= M^n / n! * int_0^1 |f^(n)| with M = max x(1-x) = 1/4.
Derivatives are supplied by the caller; nothing here differentiates
symbolically or automatically.
"""
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import ConsistencyError, DomainError, HypothesisWarning, OrderTooLowError
from .exactpoly import ExactPoly
from .legendre import _check_degree
from .quadrature import build_rule, integrate
from .shifted import shifted_eval

__all__ = [
    "SmoothFunction",
    "BeukersBound",
    "CANONICAL_M",
    "canonical_weight_max",
    "smooth_builtin",
    "SMOOTH_BUILTINS",
    "beukers_weight",
    "ibp_left",
    "ibp_right",
    "ibp_general",
    "bound_In",
    "boundary_terms",
    "report",
]

CANONICAL_M = 0.25
DEFAULT_QUAD_N = 64
FD_STEP = 1e-5
FD_RTOL = 1e-4
BOUNDARY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SmoothFunction:
    """A function together with evaluators for its first ``order`` derivatives.

    ``derivatives[k - 1]`` evaluates the k-th derivative.
    """

    value: Callable
    derivatives: Sequence[Callable]
    order: int
    domain: tuple = (0.0, 1.0)
    name: str = "f"

    def __post_init__(self):
        if len(self.derivatives) < self.order:
            raise ConsistencyError(f"declared order {self.order} but only {len(self.derivatives)} derivatives given")

    def __call__(self, x):
        return self.value(x)

    def derivative(self, k):
        if k == 0:
            return self.value
        if k > self.order:
            raise OrderTooLowError(f"{self.name} provides derivatives up to order {self.order}, need {k}")
        return self.derivatives[k - 1]

    def check_derivatives(self, points=None, upto=None, step=FD_STEP, rtol=FD_RTOL):
        """Compare each derivative with a central difference of the one below it.

        Raises :class:`ConsistencyError` on the first mismatch beyond
        ``rtol`` relative to max(1, |value|).
        """
        a, b = self.domain
        if points is None:
            points = np.linspace(a, b, 7)[1:-1]
        points = np.asarray(points, dtype=np.float64)
        upto = self.order if upto is None else min(upto, self.order)
        for k in range(1, upto + 1):
            lower = self.derivative(k - 1)
            fd = (np.asarray(lower(points + step)) - np.asarray(lower(points - step))) / (2 * step)
            exact = np.asarray(self.derivative(k)(points), dtype=np.float64)
            gap = np.abs(fd - exact) / np.maximum(1.0, np.abs(exact))
            if np.any(gap > rtol):
                i = int(np.argmax(gap))
                raise ConsistencyError(
                    f"derivative {k} of {self.name} disagrees with finite differences at x={points[i]:.6g}"
                )

    @classmethod
    def from_poly(cls, p, domain=(0.0, 1.0), name=None):
        """Exact derivatives of a polynomial; every order beyond the degree is zero."""
        p = p if isinstance(p, ExactPoly) else ExactPoly(p)
        order = max(p.degree, 0) + 1
        derivs = [p.derivative(k) for k in range(1, order + 1)]
        return cls(p, tuple(derivs), order, domain, name or str(p))

    def extended(self, order):
        """For polynomials: same function with zero derivatives up to ``order``."""
        if order <= self.order:
            return self
        if not isinstance(self.value, ExactPoly):
            raise OrderTooLowError(f"{self.name} provides derivatives up to order {self.order}, need {order}")
        zero = ExactPoly()
        derivs = tuple(self.derivatives) + (zero,) * (order - self.order)
        return SmoothFunction(self.value, derivs, order, self.domain, self.name)


def _exp_derivs(order):
    return tuple(np.exp for _ in range(order))


def _trig_derivs(start, order):
    cycle = (np.sin, np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x))
    return tuple(cycle[(start + k) % 4] for k in range(1, order + 1))


def _inv1p_derivs(order):
    def make(k):
        c = (-1) ** k * math.factorial(k)
        return lambda x: c / (1.0 + np.asarray(x, dtype=np.float64)) ** (k + 1)

    return tuple(make(k) for k in range(1, order + 1))


_MAX_ORDER = 40
SMOOTH_BUILTINS = ("1", "const:v", "x", "x^k", "exp", "sin", "cos", "inv1p")


def smooth_builtin(name, order=_MAX_ORDER):
    """Builtin smooth function with registered derivatives up to ``order``.

    Names: ``1``, ``const:v``, ``x``, ``x^k``, ``exp``, ``sin``, ``cos`` and
    ``inv1p`` (alias ``1/(1+x)``).
    """
    name = name.strip()
    if name == "1":
        return SmoothFunction.from_poly(ExactPoly([1]), name="1").extended(order)
    if name.startswith("const:"):
        v = Fraction(name.split(":", 1)[1])
        return SmoothFunction.from_poly(ExactPoly([v]), name=name).extended(order)
    if name == "x":
        return SmoothFunction.from_poly(ExactPoly([0, 1]), name=name).extended(order)
    if name.startswith("x^"):
        try:
            k = int(name[2:])
        except ValueError:
            raise DomainError(f"bad power in {name!r}") from None
        return SmoothFunction.from_poly(ExactPoly.monomial(k), name=name).extended(order)
    if name == "exp":
        return SmoothFunction(np.exp, _exp_derivs(order), order, name=name)
    if name == "sin":
        # sin = cycle entry 0
        return SmoothFunction(np.sin, _trig_derivs(0, order), order, name=name)
    if name == "cos":
        return SmoothFunction(np.cos, _trig_derivs(1, order), order, name=name)
    if name in ("inv1p", "1/(1+x)"):
        return SmoothFunction(lambda x: 1.0 / (1.0 + np.asarray(x, dtype=np.float64)), _inv1p_derivs(order), order, name="inv1p")
    raise DomainError(f"unknown smooth builtin {name!r}; known: {', '.join(SMOOTH_BUILTINS)}")


def beukers_weight(n):
    """x^n (1 - x)^n as a SmoothFunction with exact derivatives."""
    n = _check_degree(n)
    p = ExactPoly.monomial(n) * ExactPoly([1, -1]) ** n
    return SmoothFunction.from_poly(p, name=f"x^{n}(1-x)^{n}")


def _unit_rule(quad):
    if quad is None:
        return build_rule(DEFAULT_QUAD_N, 0.0, 1.0)
    if quad.interval != (0.0, 1.0):
        raise DomainError(f"rule must target [0, 1], got {quad.interval}")
    return quad


def ibp_left(n, f, quad=None):
    """Quadrature value of int_0^1 P~_n(x) f(x) dx."""
    n = _check_degree(n)
    rule = _unit_rule(quad)
    return integrate(rule, lambda x: shifted_eval(n, x) * np.asarray(f(x), dtype=np.float64))


def ibp_right(n, f, quad=None):
    """Quadrature value of (-1)^n / n! int_0^1 x^n (1-x)^n f^(n)(x) dx."""
    n = _check_degree(n)
    if n > 0 and getattr(f, "order", 0) < n:
        raise OrderTooLowError(f"need derivative of order {n}, function provides {getattr(f, 'order', 0)}")
    rule = _unit_rule(quad)
    dn = f.derivative(n) if n else f
    integral = integrate(rule, lambda x: (x * (1.0 - x)) ** n * np.asarray(dn(x), dtype=np.float64))
    return (-1) ** n / math.factorial(n) * integral


def ibp_general(n, f, g, interval=(0.0, 1.0), quad_n=DEFAULT_QUAD_N):
    """Both sides of int_a^b f^(n) g dx = (-1)^n int_a^b f g^(n) dx.

    The identity needs [g f^(k)]_a^b = 0 for 1 <= k < n.  Those boundary
    brackets are evaluated and a :class:`HypothesisWarning` is issued when
    any exceeds 1e-8; the derivative chains of f and g are spot-checked by
    finite differences next to both endpoints.
    """
    n = _check_degree(n)
    a, b = float(interval[0]), float(interval[1])
    if not b > a:
        raise DomainError(f"interval needs b > a, got [{a}, {b}]")
    for h in (f, g):
        if n > 0 and h.order < n:
            raise OrderTooLowError(f"{h.name} provides derivatives up to order {h.order}, need {n}")
    if n == 0:
        rule = build_rule(quad_n, a, b)
        left = integrate(rule, lambda x: np.asarray(f(x)) * np.asarray(g(x)))
        return left, left
    inset = 1e-3 * (b - a)
    spots = np.array([a + inset, b - inset])
    f.check_derivatives(spots, upto=n)
    g.check_derivatives(spots, upto=n)
    ends = np.array([a, b])
    for k in range(1, n):
        vals = np.asarray(g(ends), dtype=np.float64) * np.asarray(f.derivative(k)(ends), dtype=np.float64)
        jump = float(vals[1] - vals[0])
        if abs(jump) > BOUNDARY_TOL:
            warnings.warn(
                f"boundary term [g f^({k})] over [{a}, {b}] is {jump:.3e}; the identity may not hold",
                HypothesisWarning,
                stacklevel=2,
            )
    rule = build_rule(quad_n, a, b)
    dnf = f.derivative(n)
    dng = g.derivative(n)
    left = integrate(rule, lambda x: np.asarray(dnf(x)) * np.asarray(g(x)))
    right = (-1) ** n * integrate(rule, lambda x: np.asarray(f(x)) * np.asarray(dng(x)))
    return left, right


@dataclass(frozen=True)
class BeukersBound:
    """Bound M^n / n! * H on |I_n|, with H = int_0^1 |h| for the chosen split g^n h."""

    n: int
    M: float
    H: float
    bound: float


def canonical_weight_max():
    """Maximum of x(1-x) on [0, 1], attained at x = 1/2 (exactly 1/4)."""
    half = Fraction(1, 2)
    return half * (1 - half)


def bound_In(n, M=CANONICAL_M, H=1.0):
    n = _check_degree(n)
    if M < 0 or H < 0:
        raise DomainError("M and H must be non-negative")
    return BeukersBound(n, float(M), float(H), float(M) ** n / math.factorial(n) * float(H))


def boundary_terms(n):
    """Leibniz terms of d^(n-1)/dx^(n-1)[x^n (1-x)^n] evaluated exactly at 0 and 1.

    Returns a list of (k, value_at_0, value_at_1); every value is 0, which is
    why integrating by parts against P~_n leaves no boundary contribution.
    """
    n = _check_degree(n)
    if n == 0:
        return []
    xn = ExactPoly.monomial(n)
    one_minus_n = ExactPoly([1, -1]) ** n
    out = []
    for k in range(n):
        term = math.comb(n - 1, k) * xn.derivative(k) * one_minus_n.derivative(n - 1 - k)
        out.append((k, term.evaluate(0), term.evaluate(1)))
    return out


def report(n, f, quad=None, M=CANONICAL_M):
    """Left side, right side, their gap and the bound, as a JSON-ready dict.

    H is int_0^1 |f^(n)| computed with the same rule.
    """
    rule = _unit_rule(quad)
    left = ibp_left(n, f, rule)
    right = ibp_right(n, f, rule)
    dn = f.derivative(n) if n else f
    H = integrate(rule, lambda x: np.abs(np.asarray(dn(x), dtype=np.float64)))
    b = bound_In(n, M, H)
    return {"n": n, "left": left, "right": right, "abs_diff": abs(left - right), "bound": b.bound}
