"""Exterior Dirichlet problem for Laplace's equation around a sphere, azimuthal symmetry.

Given the potential F(theta) on the sphere r = a, the bounded solution for
r >= a is

    V(r, theta) = sum_n c_n (a / r)^(n+1) P_n(cos theta),

where c_n are the Fourier-Legendre coefficients of G(x) = F(arccos x).
Everything is computed on x = cos(theta) in [-1, 1].  The growing branch
r^n is discarded; the interior problem is not modelled.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .functions import FunctionSpec
from .legendre import _check_degree, eval_batch
from .serialize import rows_to_csv
from .series import project

__all__ = [
    "BoundaryData",
    "SphereSolution",
    "radial_exponent",
    "radial_residual",
    "solve_exterior",
    "eval_potential",
    "emit_field_grid",
    "grid_to_csv",
]


def radial_exponent(n):
    """Exponent p of the decaying radial mode R(r) = r^p for lambda = n(n+1).

    Substituting r^p into r (r R)'' = lambda R gives p(p+1) = n(n+1), whose
    roots are n (rejected, it grows) and -(n+1).
    """
    n = _check_degree(n)
    return -(n + 1)


def radial_residual(n, r, h=1e-3):
    """r (r R)'' - n(n+1) R for R = r^-(n+1), with (r R)'' from a 5-point central stencil.

    Returned relative to n(n+1) R (or R when n = 0); zero up to truncation and
    rounding when the exponent is right.
    """
    n = _check_degree(n)
    p = radial_exponent(n)
    lam = n * (n + 1)

    def u(s):
        return s * s**p

    d2 = (-u(r + 2 * h) + 16 * u(r + h) - 30 * u(r) + 16 * u(r - h) - u(r - 2 * h)) / (12 * h * h)
    R = r**p
    return (r * d2 - lam * R) / (max(lam, 1) * R)


@dataclass(frozen=True, eq=False)
class BoundaryData:
    """Sphere radius ``a`` and surface potential ``F``.

    ``variable`` says how ``F`` is parametrised: ``"theta"`` for F(theta) on
    [0, pi], ``"x"`` for G(x) = F(arccos x) on [-1, 1].
    """

    a: float
    F: object
    variable: str = "theta"

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"sphere radius must be positive, got {self.a}")
        if self.variable not in ("theta", "x"):
            raise DomainError("variable must be 'theta' or 'x'")

    def on_x(self):
        """The boundary data as a FunctionSpec in x = cos(theta) on [-1, 1]."""
        F = self.F
        if self.variable == "x":
            if isinstance(F, FunctionSpec):
                return F.with_domain((-1.0, 1.0))
            return FunctionSpec.from_callable(F, (-1.0, 1.0), name="G")
        jumps = ()
        if isinstance(F, FunctionSpec):
            jumps = tuple(sorted(float(np.cos(t)) for t in F.jump_points))
        return FunctionSpec.from_callable(
            lambda x: F(np.arccos(np.clip(x, -1.0, 1.0))), (-1.0, 1.0), jumps, name="F(arccos x)"
        )


@dataclass(frozen=True, eq=False)
class SphereSolution:
    """Multipole coefficients c_0 ... c_N of the exterior potential around radius ``a``."""

    a: float
    coeffs: np.ndarray

    def __post_init__(self):
        cs = np.array(self.coeffs, dtype=np.float64)
        cs.setflags(write=False)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "a", float(self.a))

    @property
    def N(self):
        return self.coeffs.shape[0] - 1

    def __call__(self, r, theta):
        return eval_potential(self, r, theta)

    def to_json(self):
        return {"a": self.a, "coeffs": [float(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(data["a"], data["coeffs"])

    def __eq__(self, other):
        if not isinstance(other, SphereSolution):
            return NotImplemented
        return self.a == other.a and np.array_equal(self.coeffs, other.coeffs)


def solve_exterior(bd, N, quad_n=None):
    """c_n = (n + 1/2) * integral over [-1, 1] of F(arccos x) P_n(x)."""
    N = _check_degree(N)
    s = project(bd.on_x(), N, quad_n=quad_n, basis="legendre")
    return SphereSolution(bd.a, s.coeffs)


def eval_potential(sol, r, theta):
    """V(r, theta); ``r`` and ``theta`` broadcast against each other."""
    r = np.asarray(r, dtype=np.float64)
    theta = np.asarray(theta, dtype=np.float64)
    if np.any(r < sol.a):
        raise DomainError(f"r must be >= a = {sol.a}; the interior is not modelled")
    if np.any((theta < 0) | (theta > np.pi)):
        raise DomainError("theta must lie in [0, pi]")
    r, theta = np.broadcast_arrays(r, theta)
    shape = r.shape
    ratio = (sol.a / r).ravel()
    table = eval_batch(sol.N, np.cos(theta).ravel()).reshape(sol.N + 1, -1)
    total = np.zeros_like(ratio)
    decay = ratio.copy()
    for n in range(sol.N + 1):
        total += sol.coeffs[n] * decay * table[n]
        decay = decay * ratio
    return float(total[0]) if not shape else total.reshape(shape)


def emit_field_grid(sol, r_max, nr, ntheta, normalize=False):
    """Rows (r, theta, V) on a uniform grid over [a, r_max] x [0, pi], r varying slowest.

    With ``normalize`` the r column is reported in units of ``a``.
    """
    if not r_max > sol.a:
        raise DomainError(f"r_max must exceed a = {sol.a}")
    if nr < 2 or ntheta < 2:
        raise DomainError("grid needs at least two points along each axis")
    rs = np.linspace(sol.a, r_max, nr)
    ts = np.linspace(0.0, np.pi, ntheta)
    R, T = np.meshgrid(rs, ts, indexing="ij")
    V = eval_potential(sol, R, T)
    rcol = R.ravel() / sol.a if normalize else R.ravel()
    return np.column_stack([rcol, T.ravel(), V.ravel()])


def grid_to_csv(rows):
    return rows_to_csv(("r", "theta", "V"), rows)
