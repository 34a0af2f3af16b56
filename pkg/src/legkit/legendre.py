"""Legendre polynomials P_n on [-1, 1], exact and in floating point.

Exact work goes through :class:`~legkit.exactpoly.ExactPoly`.  Floating
evaluation always uses the Bonnet three-term recurrence; the explicit power
sum loses everything to cancellation beyond degree ~25.
"""
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import ConsistencyError, DomainError
from .exactpoly import ExactPoly

__all__ = [
    "Eigenvalue",
    "LegendreBasis",
    "coeffs_explicit",
    "coeffs_rodrigues",
    "legendre_poly",
    "legendre_basis",
    "eval_recurrence",
    "eval_batch",
    "derivative_eval",
    "special_value",
    "generating_partial_sum",
    "two_adic_scaling",
    "norm_squared",
    "norm_squared_exact",
    "ode_residual",
    "double_factorial",
]


def _check_degree(n):
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    return int(n)


def double_factorial(n):
    """n!! with the conventions (-1)!! = 0!! = 1."""
    if n < -1:
        raise DomainError("double factorial defined for n >= -1")
    return math.prod(range(n, 0, -2))


@dataclass(frozen=True)
class Eigenvalue:
    """Separation constant lambda = n(n+1) admitting a polynomial solution of degree n."""

    n: int

    @property
    def lam(self):
        return self.n * (self.n + 1)

    @classmethod
    def from_lambda(cls, lam):
        """Inverse map; raises DomainError when lam is not of the form n(n+1)."""
        lam = int(lam)
        disc = 1 + 4 * lam
        r = math.isqrt(disc)
        if lam < 0 or r * r != disc:
            raise DomainError(f"{lam} is not of the form n(n+1)")
        return cls((r - 1) // 2)


def coeffs_explicit(n):
    """P_n from the closed-form sum over C(n,k) C(2n-2k,n) x^(n-2k) / 2^n."""
    n = _check_degree(n)
    cs = [Fraction(0)] * (n + 1)
    scale = 2**n
    for k in range(n // 2 + 1):
        cs[n - 2 * k] = Fraction((-1) ** k * math.comb(n, k) * math.comb(2 * n - 2 * k, n), scale)
    return ExactPoly(cs)


def coeffs_rodrigues(n):
    """P_n as (1 / (2^n n!)) d^n/dx^n (x^2 - 1)^n, expanded and differentiated term by term."""
    n = _check_degree(n)
    cs = [Fraction(0)] * (n + 1)
    denom = 2**n * math.factorial(n)
    # (x^2 - 1)^n = sum_j C(n, j) (-1)^(n-j) x^(2j); only 2j >= n survives n derivatives
    for j in range((n + 1) // 2, n + 1):
        power = 2 * j
        falling = math.perm(power, n)
        cs[power - n] = Fraction((-1) ** (n - j) * math.comb(n, j) * falling, denom)
    return ExactPoly(cs)


@lru_cache(maxsize=None)
def legendre_poly(n):
    """Cached exact P_n."""
    return coeffs_explicit(n)


@dataclass(frozen=True)
class LegendreBasis:
    """Exact P_0 ... P_max_degree together with their squared norms 2/(2n+1)."""

    max_degree: int
    polys: tuple
    norm_sq: tuple

    @classmethod
    def build(cls, max_degree):
        max_degree = _check_degree(max_degree)
        polys = tuple(legendre_poly(k) for k in range(max_degree + 1))
        return cls(max_degree, polys, tuple(norm_squared(k) for k in range(max_degree + 1)))

    def extend(self, max_degree):
        """Return a basis covering at least ``max_degree``; reuses existing entries."""
        if max_degree <= self.max_degree:
            return self
        extra = range(self.max_degree + 1, max_degree + 1)
        return LegendreBasis(
            max_degree,
            self.polys + tuple(legendre_poly(k) for k in extra),
            self.norm_sq + tuple(norm_squared(k) for k in extra),
        )

    def __getitem__(self, n):
        return self.polys[n]

    def __len__(self):
        return len(self.polys)


_basis = None
_basis_lock = threading.Lock()


def legendre_basis(max_degree):
    """Shared basis covering at least ``max_degree``; grows monotonically, never rebuilt."""
    global _basis
    b = _basis
    if b is not None and b.max_degree >= max_degree:
        return b
    with _basis_lock:
        if _basis is None:
            _basis = LegendreBasis.build(max_degree)
        elif _basis.max_degree < max_degree:
            _basis = _basis.extend(max_degree)
        return _basis


def _scalar_or_array(values, x):
    return float(values[0]) if np.ndim(x) == 0 else values.reshape(np.shape(x))


def eval_recurrence(n, x):
    """P_n(x) by the Bonnet recurrence; ``x`` may be a scalar or an array."""
    n = _check_degree(n)
    p, _ = kernels.legendre_pair(n, x)
    return _scalar_or_array(p, x)


def eval_batch(n_max, x):
    """Values P_0(x) ... P_{n_max}(x) from a single recurrence pass.

    Scalar ``x`` gives a vector of length n_max + 1; array ``x`` gives an
    array of shape (n_max + 1,) + x.shape.
    """
    n_max = _check_degree(n_max)
    table = kernels.legendre_table(n_max, x)
    if np.ndim(x) == 0:
        return table[:, 0]
    return table.reshape((n_max + 1,) + np.shape(x))


def _derivative_relation(n, x):
    x = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(x) >= 1):
        raise DomainError("relation path requires |x| < 1")
    p, q = kernels.legendre_pair(n, x)
    p = p.reshape(x.shape)
    q = q.reshape(x.shape)
    return n * (q - x * p) / (1.0 - x * x)


def _derivative_exact(n, x):
    dp = legendre_poly(n).derivative()
    x = np.asarray(x, dtype=np.float64)
    flat = [float(dp.evaluate(float(v))) for v in x.ravel()]
    return np.array(flat).reshape(x.shape)


def derivative_eval(n, x, path="relation"):
    """P'_n(x).

    ``path`` selects the computation: ``"relation"`` uses
    (1 - x^2) P'_n = n (P_{n-1} - x P_n) with recurrence values and needs
    |x| < 1; ``"exact"`` differentiates the exact polynomial and evaluates it
    exactly at the (binary-exact) input; ``"checked"`` runs both and raises
    :class:`ConsistencyError` when they differ by more than 1e-13 relative to
    the sup-norm scale n(n+1)/2 of P'_n on [-1, 1].
    """
    n = _check_degree(n)
    if path == "relation":
        if n == 0:
            return _scalar_or_array(np.zeros(np.size(x)), x)
        out = _derivative_relation(n, x)
    elif path == "exact":
        out = _derivative_exact(n, x)
    elif path == "checked":
        rel = _derivative_relation(n, x) if n else np.zeros(np.shape(x))
        ex = _derivative_exact(n, x)
        scale = max(1.0, n * (n + 1) / 2)
        err = np.max(np.abs(rel - ex)) / scale if np.size(x) else 0.0
        if err > 1e-13:
            raise ConsistencyError(f"derivative paths disagree for n={n}: relative gap {err:.3e}")
        out = ex
    else:
        raise ValueError(f"unknown path {path!r}")
    return float(out) if np.ndim(x) == 0 else out


def special_value(n, point):
    """Exact P_n at +1, -1 or 0."""
    n = _check_degree(n)
    point = Fraction(point)
    if point == 1:
        return Fraction(1)
    if point == -1:
        return Fraction((-1) ** n)
    if point == 0:
        if n % 2:
            return Fraction(0)
        return Fraction((-1) ** (n // 2) * double_factorial(n - 1), double_factorial(n))
    raise DomainError("special values are tabulated at +1, -1 and 0 only")


def generating_partial_sum(x, t, N):
    """sum_{n=0}^{N} P_n(x) t^n, which tends to 1/sqrt(1 - 2xt + t^2) for |t| < 1."""
    if abs(t) >= 1:
        raise DomainError("generating series needs |t| < 1")
    N = _check_degree(N)
    vals = eval_batch(N, float(x))
    powers = float(t) ** np.arange(N + 1)
    total = 0.0
    for v, tp in zip(vals, powers):
        total += v * tp
    return total


def two_adic_scaling(n):
    """Exponent of 2 in n!, by Legendre's formula sum_k floor(n / 2^k)."""
    n = _check_degree(n)
    total, q = 0, n
    while q:
        q //= 2
        total += q
    return total


def norm_squared(n):
    """Exact integral of P_n^2 over [-1, 1], i.e. 2/(2n+1)."""
    n = _check_degree(n)
    return Fraction(2, 2 * n + 1)


def norm_squared_exact(n):
    """Same value as :func:`norm_squared`, obtained by integrating the exact square."""
    p = legendre_poly(n)
    return (p * p).integrate(-1, 1)


def ode_residual(n, poly=None):
    """(1 - x^2) p'' - 2x p' + n(n+1) p as an exact polynomial (zero for p = P_n)."""
    p = legendre_poly(n) if poly is None else poly
    one_minus_x2 = ExactPoly([1, 0, -1])
    return one_minus_x2 * p.derivative(2) - ExactPoly([0, 2]) * p.derivative() + n * (n + 1) * p
