"""Shifted Legendre polynomials on [0, 1] and the general affine remapping to [a, b].

Two conventions coexist and are kept apart on purpose:

* :func:`shifted_coeffs` and friends follow Beukers, ``P~_n(x) = P_n(1 - 2x)``,
  so that ``P~_n(0) = 1``.
* :func:`interval_poly` composes ``P_n`` with ``alpha*x - beta``, the map
  sending [a, b] onto [-1, 1].  On [0, 1] this is ``P_n(2x - 1)``, which
  equals ``(-1)^n`` times the Beukers polynomial.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConsistencyError, DomainError, InvalidIntervalError
from .exactpoly import ExactPoly, to_fraction
from .legendre import _check_degree, double_factorial, eval_recurrence, legendre_poly

__all__ = [
    "ShiftedPoly",
    "AffineBasisMap",
    "shifted_coeffs",
    "shifted_from_substitution",
    "shifted_rodrigues",
    "shifted_leibniz",
    "shifted_special",
    "shifted_moment",
    "shifted_moment_exact",
    "shifted_norm_squared",
    "shifted_eval",
    "interval_poly",
]


@dataclass(frozen=True)
class ShiftedPoly:
    """Integer-coefficient shifted Legendre polynomial; ``coeffs[m]`` multiplies x^m."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ConsistencyError(f"expected {self.n + 1} coefficients, got {len(self.coeffs)}")
        if not all(isinstance(c, int) for c in self.coeffs):
            raise ConsistencyError("shifted Legendre coefficients must be Python ints")

    @classmethod
    def from_exact(cls, n, poly):
        """Build from an ExactPoly, failing loudly if any coefficient is not an integer."""
        if poly.degree != n:
            raise ConsistencyError(f"degree {poly.degree} does not match n={n}")
        bad = [c for c in poly.coeffs if c.denominator != 1]
        if bad:
            raise ConsistencyError(f"non-integer coefficient {bad[0]} in shifted polynomial of degree {n}")
        return cls(n, tuple(c.numerator for c in poly.coeffs))

    def to_exact(self):
        return ExactPoly(self.coeffs)

    def __call__(self, x):
        return self.to_exact()(x)


def shifted_coeffs(n):
    """P~_n(x) = sum_m C(n,m) C(n+m,m) (-x)^m."""
    n = _check_degree(n)
    return ShiftedPoly(n, tuple((-1) ** m * math.comb(n, m) * math.comb(n + m, m) for m in range(n + 1)))


def shifted_from_substitution(n):
    """Compose the exact P_n with 1 - 2x."""
    n = _check_degree(n)
    return ShiftedPoly.from_exact(n, legendre_poly(n).compose(ExactPoly([1, -2])))


def shifted_rodrigues(n):
    """(1/n!) d^n/dx^n [x^n (1-x)^n] with the product expanded by the binomial theorem."""
    n = _check_degree(n)
    # x^n (1-x)^n = sum_j C(n,j) (-1)^j x^(n+j)
    base = [0] * (2 * n + 1)
    for j in range(n + 1):
        base[n + j] = (-1) ** j * math.comb(n, j)
    deriv = ExactPoly(base).derivative(n) / math.factorial(n)
    return ShiftedPoly.from_exact(n, deriv)


def shifted_leibniz(n):
    """Double sum sum_k C(n,k)^2 sum_j C(k,j) (-x)^(n-k+j) from the Leibniz rule."""
    n = _check_degree(n)
    cs = [0] * (n + 1)
    for k in range(n + 1):
        ck2 = math.comb(n, k) ** 2
        for j in range(k + 1):
            power = n - k + j
            cs[power] += ck2 * math.comb(k, j) * (-1) ** power
    return ShiftedPoly(n, tuple(cs))


def shifted_special(n, point):
    """Exact P~_n at 0, 1 or 1/2."""
    n = _check_degree(n)
    point = to_fraction(point)
    if point == 0:
        return Fraction(1)
    if point == 1:
        return Fraction((-1) ** n)
    if point == Fraction(1, 2):
        if n % 2:
            return Fraction(0)
        return Fraction((-1) ** (n // 2) * double_factorial(n - 1), double_factorial(n))
    raise DomainError("special values are tabulated at 0, 1 and 1/2 only")


def shifted_moment(n):
    """Integral of x^n P~_n(x) over [0, 1] in closed form: (-1)^n (n!)^2 / (2n+1)!."""
    n = _check_degree(n)
    return Fraction((-1) ** n * math.factorial(n) ** 2, math.factorial(2 * n + 1))


def shifted_moment_exact(n, m=None):
    """Integral of x^m P~_n(x) over [0, 1] by exact polynomial integration (m defaults to n)."""
    n = _check_degree(n)
    m = n if m is None else m
    return (ExactPoly.monomial(m) * shifted_coeffs(n).to_exact()).integrate(0, 1)


def shifted_norm_squared(n):
    """Integral of P~_n^2 over [0, 1]: 1/(2n+1)."""
    n = _check_degree(n)
    return Fraction(1, 2 * n + 1)


def shifted_eval(n, x):
    """Floating-point P~_n(x) via the recurrence at 1 - 2x."""
    return eval_recurrence(n, 1.0 - 2.0 * np.asarray(x, dtype=np.float64))


@dataclass(frozen=True)
class AffineBasisMap:
    """The map x -> alpha*x - beta taking [a, b] onto [-1, 1]."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = to_fraction(self.a), to_fraction(self.b)
        if b <= a:
            raise InvalidIntervalError(f"interval needs b > a, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def alpha(self):
        return 2 / (self.b - self.a)

    @property
    def beta(self):
        return (self.b + self.a) / (self.b - self.a)

    def as_poly(self):
        return ExactPoly([-self.beta, self.alpha])

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return self.alpha * x - self.beta
        return float(self.alpha) * np.asarray(x, dtype=np.float64) - float(self.beta)


def interval_poly(n, interval):
    """Exact P_n(alpha*x - beta): the degree-n member of the family orthogonal on [a, b].

    ``interval`` is an :class:`AffineBasisMap` or an (a, b) pair.
    """
    n = _check_degree(n)
    amap = interval if isinstance(interval, AffineBasisMap) else AffineBasisMap(*interval)
    return legendre_poly(n).compose(amap.as_poly())
