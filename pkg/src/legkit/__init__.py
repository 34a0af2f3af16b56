"""Legendre and shifted Legendre polynomials: exact coefficients, roots,
Gauss-Legendre quadrature, Fourier-Legendre series, an exterior spherical
Laplace solver and Beukers-style integration-by-parts tools."""
from .exactpoly import ExactPoly
from .kernels import BACKEND
from .legendre import (
    Eigenvalue,
    LegendreBasis,
    coeffs_explicit,
    coeffs_rodrigues,
    derivative_eval,
    eval_batch,
    eval_recurrence,
    generating_partial_sum,
    legendre_basis,
    norm_squared,
    special_value,
    two_adic_scaling,
)
from .quadrature import QuadratureRule, build_rule, gauss_weights, integrate, legendre_roots
from .series import SeriesExpansion, evaluate, project, project_exact, tail_energy
from .shifted import (
    AffineBasisMap,
    ShiftedPoly,
    interval_poly,
    shifted_coeffs,
    shifted_from_substitution,
    shifted_leibniz,
    shifted_rodrigues,
)
from .sphere import BoundaryData, SphereSolution, eval_potential, solve_exterior

__version__ = "0.1.0"
