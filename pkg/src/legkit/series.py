"""Fourier-Legendre projection and evaluation on [-1, 1], [0, 1] or [a, b].

Three bases are supported:

``legendre``
    P_n on [-1, 1], coefficients a_n = (n + 1/2) * integral(f P_n).
``shifted``
    Beukers' P~_n(x) = P_n(1 - 2x) on [0, 1], b_n = (2n + 1) * integral(f P~_n).
``mapped``
    P_n(alpha*x - beta) on [a, b], c_n = (2n + 1)/(b - a) * integral(f ...).

The orthonormal variants are a rescaling of the stored coefficients (see
:meth:`SeriesExpansion.orthonormal_coeffs`), not a separate code path.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import DomainError
from .exactpoly import ExactPoly, to_fraction
from .functions import FunctionSpec
from .legendre import eval_batch, legendre_poly
from .quadrature import build_rule, integrate
from .shifted import AffineBasisMap, shifted_coeffs

__all__ = [
    "BASES",
    "SeriesExpansion",
    "project",
    "project_exact",
    "evaluate",
    "tail_energy",
    "sample_curve",
]

BASES = ("legendre", "shifted", "mapped")


def _default_basis(domain):
    a, b = domain
    if (a, b) == (-1.0, 1.0):
        return "legendre"
    if (a, b) == (0.0, 1.0):
        return "shifted"
    return "mapped"


def _check_basis(basis, interval):
    a, b = float(interval[0]), float(interval[1])
    if basis not in BASES:
        raise DomainError(f"unknown basis {basis!r}; expected one of {BASES}")
    if basis == "legendre" and (a, b) != (-1.0, 1.0):
        raise DomainError("the legendre basis lives on [-1, 1]")
    if basis == "shifted" and (a, b) != (0.0, 1.0):
        raise DomainError("the shifted basis lives on [0, 1]")
    if not b > a:
        raise DomainError(f"interval needs b > a, got [{a}, {b}]")
    return a, b


def _to_reference(basis, interval, x):
    """Map points of the basis interval to the argument fed to P_n."""
    a, b = interval
    x = np.asarray(x, dtype=np.float64)
    if basis == "legendre":
        return x
    if basis == "shifted":
        return 1.0 - 2.0 * x
    return (2.0 * x - a - b) / (b - a)


@dataclass(frozen=True, eq=False)
class SeriesExpansion:
    """Truncated series sum(coeffs[n] * basis_n) on ``interval``."""

    basis: str
    interval: tuple
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "interval", _check_basis(self.basis, self.interval))
        cs = np.array(self.coeffs, dtype=np.float64)
        cs.setflags(write=False)
        object.__setattr__(self, "coeffs", cs)

    @property
    def N(self):
        return self.coeffs.shape[0] - 1

    @property
    def length(self):
        a, b = self.interval
        return b - a

    def norm_sq(self, n):
        """Squared L2 norm of basis element n on the basis interval."""
        return self.length / (2 * n + 1)

    def orthonormal_coeffs(self):
        """Coefficients against the orthonormal basis, i.e. c_n * sqrt(length / (2n + 1))."""
        n = np.arange(self.N + 1)
        return self.coeffs * np.sqrt(self.length / (2 * n + 1))

    def __call__(self, x):
        return evaluate(self, x)

    def to_json(self):
        return {"basis": self.basis, "interval": list(self.interval), "coeffs": [float(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(data["basis"], tuple(data["interval"]), data["coeffs"])

    def __eq__(self, other):
        if not isinstance(other, SeriesExpansion):
            return NotImplemented
        return (
            self.basis == other.basis
            and self.interval == other.interval
            and np.array_equal(self.coeffs, other.coeffs)
        )


def project(f, N, quad_n=None, basis=None, interval=None):
    """Project ``f`` onto the first N + 1 basis functions by Gauss-Legendre quadrature.

    ``f`` is a :class:`FunctionSpec` (its domain and jump points are used) or
    a plain callable, in which case ``interval`` is required.  The integral is
    split at every declared jump and each piece gets its own ``quad_n``-point
    rule; ``quad_n`` defaults to max(64, 2N).
    """
    if not isinstance(f, FunctionSpec):
        if interval is None:
            raise DomainError("a bare callable needs an explicit interval")
        f = FunctionSpec.from_callable(f, interval)
    elif interval is not None:
        f = f.with_domain(interval)
    if N < 0:
        raise DomainError("truncation degree must be >= 0")
    if quad_n is None:
        quad_n = max(64, 2 * N)
    if quad_n < 1:
        raise DomainError(f"quad_n must be >= 1, got {quad_n}")
    basis = basis or _default_basis(f.domain)
    a, b = _check_basis(basis, f.domain)
    cuts = [a, *f.jump_points, b]
    moments = np.zeros(N + 1)
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        rule = build_rule(quad_n, lo, hi)
        vals = np.asarray(f(rule.points), dtype=np.float64)
        if not np.all(np.isfinite(vals)):
            # let integrate() pin the failing node
            integrate(rule, f)
        table = eval_batch(N, _to_reference(basis, (a, b), rule.points))
        moments += rule.half_length * (table @ (rule.weights * vals))
    n = np.arange(N + 1)
    return SeriesExpansion(basis, (a, b), (2 * n + 1) / (b - a) * moments)


def _exact_basis_poly(basis, interval, n):
    if basis == "legendre":
        return legendre_poly(n)
    if basis == "shifted":
        return shifted_coeffs(n).to_exact()
    return legendre_poly(n).compose(AffineBasisMap(*interval).as_poly())


def project_exact(p, basis="legendre", interval=None, N=None):
    """Exact rational expansion coefficients of the polynomial ``p``.

    Coefficients above deg(p) vanish by orthogonality and are returned as
    zeros when ``N`` exceeds the degree.
    """
    if interval is None:
        interval = {"legendre": (-1, 1), "shifted": (0, 1)}.get(basis)
        if interval is None:
            raise DomainError("the mapped basis needs an explicit interval")
    a, b = to_fraction(interval[0]), to_fraction(interval[1])
    _check_basis(basis, (float(a), float(b)))
    p = p if isinstance(p, ExactPoly) else ExactPoly(p)
    N = max(p.degree, 0) if N is None else N
    out = []
    for n in range(N + 1):
        if n > p.degree:
            out.append(Fraction(0))
            continue
        integral = (p * _exact_basis_poly(basis, (a, b), n)).integrate(a, b)
        out.append(Fraction(2 * n + 1) / (b - a) * integral)
    return out


def evaluate(s, x):
    """Value of the truncated series at ``x`` (scalar or array) in its basis interval."""
    a, b = s.interval
    xa = np.asarray(x, dtype=np.float64)
    if np.any((xa < a) | (xa > b)) or not np.all(np.isfinite(xa)):
        raise DomainError(f"evaluation point outside [{a}, {b}]")
    t = _to_reference(s.basis, s.interval, xa)
    vals = kernels.legendre_series(s.coeffs, t)
    return float(vals[0]) if xa.ndim == 0 else vals.reshape(xa.shape)


def tail_energy(s, start):
    """L2 mass sum_{n >= start} coeffs[n]^2 * ||basis_n||^2 of the stored tail."""
    if start > s.N + 1 or start < 0:
        raise DomainError(f"start index {start} outside 0..{s.N}")
    total = 0.0
    for n in range(start, s.N + 1):
        total += s.coeffs[n] ** 2 * s.norm_sq(n)
    return total


def sample_curve(s, points=101, f=None):
    """Rows (x, f_approx) on a uniform grid, or (x, f, f_approx) when ``f`` is given."""
    if points < 2:
        raise DomainError("a curve needs at least two points")
    a, b = s.interval
    xs = np.linspace(a, b, points)
    approx = evaluate(s, xs)
    if f is None:
        return np.column_stack([xs, approx])
    return np.column_stack([xs, np.asarray(f(xs), dtype=np.float64), approx])
