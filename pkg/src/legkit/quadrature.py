"""Roots of P_n and Gauss-Legendre quadrature on arbitrary intervals.

Roots are found by ascending induction on the degree.  The roots of
P_{k-1}, padded with -1 and +1, cut (-1, 1) into k pieces, and each piece
holds exactly one root of P_k.  Every piece is a guaranteed sign-change
bracket, so Newton's method can be safeguarded by bisection.  Only the
non-negative roots are polished; the rest follow by parity.
"""
import os
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError, FunctionEvaluationError, InvalidIntervalError
from .legendre import _check_degree

__all__ = [
    "RootBracket",
    "QuadratureRule",
    "legendre_roots",
    "root_brackets",
    "gauss_weights",
    "build_rule",
    "integrate",
    "DEFAULT_TOL",
    "STEP_TOL",
    "MAX_ITER",
]

DEFAULT_TOL = 1e-14
STEP_TOL = 1e-15
MAX_ITER = 100

_ladder = {}  # tol -> list whose entry k holds the roots of P_k
_ladder_lock = threading.Lock()


@dataclass(frozen=True)
class RootBracket:
    """Interval [lo, hi] holding exactly one root of P_degree."""

    lo: float
    hi: float
    degree: int

    def is_valid(self):
        p = kernels.legendre_pair(self.degree, np.array([self.lo, self.hi]))[0]
        return bool(p[0] * p[1] < 0)


def _nonneg_brackets(k, prev):
    """Brackets for the positive roots of P_k built from the roots of P_{k-1}."""
    pts = np.concatenate([prev[prev >= 0.0], [1.0]])
    return pts[:-1], pts[1:]


def root_brackets(n, tol=DEFAULT_TOL):
    """All n brackets for P_n, derived from the roots of P_{n-1} padded with -1 and +1."""
    n = _check_degree(n)
    if n < 1:
        raise DomainError("P_0 has no roots")
    edges = np.concatenate([[-1.0], legendre_roots(n - 1, tol) if n > 1 else [], [1.0]])
    return [RootBracket(float(lo), float(hi), n) for lo, hi in zip(edges[:-1], edges[1:])]


def _assemble(k, positive):
    neg = -positive[::-1]
    if k % 2:
        return np.concatenate([neg, [0.0], positive])
    return np.concatenate([neg, positive])


def _ladder_to(n, tol):
    with _ladder_lock:
        ladder = _ladder.setdefault(tol, [np.empty(0), np.array([0.0])])
        for k in range(len(ladder), n + 1):
            # for odd k the bracket straddling 0 is skipped: its root is exactly 0
            lo, hi = _nonneg_brackets(k, ladder[k - 1])
            pos, iters = kernels.polish_roots(k, lo, hi, tol, STEP_TOL, MAX_ITER)
            if np.any(iters < 0):
                bad = int(np.argmax(iters < 0))
                raise ConvergenceError(
                    f"root {bad} of P_{k} in [{lo[bad]!r}, {hi[bad]!r}] not converged in {MAX_ITER} iterations"
                )
            pos = kernels.refine_roots(k, pos)
            ladder.append(_assemble(k, np.sort(pos)))
        return ladder[n]


def _precision_bits():
    raw = os.environ.get("LEGKIT_PRECISION_BITS", "").strip()
    if not raw:
        return 53
    try:
        bits = int(raw)
    except ValueError:
        raise DomainError(f"LEGKIT_PRECISION_BITS must be an integer, got {raw!r}") from None
    return max(bits, 53)


def _mp_polish(n, roots, bits):
    import mpmath

    ctx = mpmath.mp.clone()
    ctx.prec = bits
    out = np.empty_like(roots)
    for i, r in enumerate(roots):
        x = ctx.mpf(float(r))
        for _ in range(MAX_ITER):
            prev, cur = ctx.mpf(0), ctx.mpf(1)
            for k in range(n):
                prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
            step = cur * (1 - x * x) / (n * (prev - x * cur))
            x -= step
            if abs(step) <= ctx.ldexp(1, -bits + 4):
                break
        out[i] = float(x)
    return out


def legendre_roots(n, tol=DEFAULT_TOL):
    """The n roots of P_n in increasing order, all strictly inside (-1, 1).

    ``tol`` is the stopping threshold on |P_n(x)|; Newton also stops once a
    step moves the node by at most 1e-15.  With ``LEGKIT_PRECISION_BITS``
    above 53 the double-precision roots are re-polished with mpmath at that
    working precision before rounding back.
    """
    n = _check_degree(n)
    if n < 1:
        raise DomainError("P_0 has no roots")
    if not tol >= 1e-15:
        raise DomainError(f"tolerance must be >= 1e-15, got {tol!r}")
    roots = _ladder_to(n, float(tol)).copy()
    bits = _precision_bits()
    if bits > 53 and n > 1:
        half = n // 2
        pos = _mp_polish(n, roots[n - half:], bits)
        roots = _assemble(n, pos)
    roots.setflags(write=False)
    return roots


def gauss_weights(nodes, n):
    """Weights 2 / ((1 - x^2) P'_n(x)^2) at the given roots of P_n."""
    nodes = np.asarray(nodes, dtype=np.float64)
    if np.any(np.abs(nodes) >= 1):
        raise DomainError("Gauss nodes must lie strictly inside (-1, 1)")
    p, q = kernels.legendre_pair(n, nodes)
    one_minus = 1.0 - nodes * nodes
    dp = n * (q - nodes * p) / one_minus
    return 2.0 / (one_minus * dp * dp)


class QuadratureRule:
    """n-point Gauss-Legendre rule targeting the interval [a, b].

    ``nodes`` and ``weights`` are the reference values on (-1, 1); ``points``
    and ``scaled_weights`` are their images under x = (b-a)/2 t + (a+b)/2.
    """

    __slots__ = ("n", "nodes", "weights", "interval")

    def __init__(self, n, nodes, weights, interval=(-1.0, 1.0)):
        a, b = float(interval[0]), float(interval[1])
        if not b > a:
            raise InvalidIntervalError(f"interval needs b > a, got [{a}, {b}]")
        nodes = np.array(nodes, dtype=np.float64)
        weights = np.array(weights, dtype=np.float64)
        if nodes.shape != (n,) or weights.shape != (n,):
            raise ValueError("nodes and weights must both have length n")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        self.n = int(n)
        self.nodes = nodes
        self.weights = weights
        self.interval = (a, b)

    @property
    def half_length(self):
        a, b = self.interval
        return 0.5 * (b - a)

    @property
    def points(self):
        a, b = self.interval
        return self.half_length * self.nodes + 0.5 * (a + b)

    @property
    def scaled_weights(self):
        return self.half_length * self.weights

    def remap(self, a, b):
        """Same reference nodes aimed at another interval."""
        return QuadratureRule(self.n, self.nodes, self.weights, (a, b))

    def to_json(self):
        return {
            "n": self.n,
            "interval": list(self.interval),
            "nodes": [float(v) for v in self.nodes],
            "weights": [float(v) for v in self.weights],
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["n"], data["nodes"], data["weights"], tuple(data["interval"]))

    def __eq__(self, other):
        if not isinstance(other, QuadratureRule):
            return NotImplemented
        return (
            self.n == other.n
            and self.interval == other.interval
            and np.array_equal(self.nodes, other.nodes)
            and np.array_equal(self.weights, other.weights)
        )

    def __repr__(self):
        return f"QuadratureRule(n={self.n}, interval={self.interval})"


_rules = {}
_rules_lock = threading.Lock()


def _reference_rule(n):
    key = (n, Fraction(-1), Fraction(1))
    rule = _rules.get(key)
    if rule is not None:
        return rule
    if n == 1:
        rule = QuadratureRule(1, [0.0], [2.0])
    else:
        nodes = legendre_roots(n)
        rule = QuadratureRule(n, nodes, gauss_weights(nodes, n))
    with _rules_lock:
        return _rules.setdefault(key, rule)


def build_rule(n, a=-1.0, b=1.0):
    """Gauss-Legendre rule with n points on [a, b]; exact for degree <= 2n - 1.

    Rules are cached under exact rational keys (floats convert to Fraction
    without rounding), so repeated requests share one immutable object.
    """
    n = _check_degree(n)
    if n < 1:
        raise DomainError("a quadrature rule needs n >= 1")
    if not float(b) > float(a):
        raise InvalidIntervalError(f"interval needs b > a, got [{a}, {b}]")
    key = (n, Fraction(a), Fraction(b))
    rule = _rules.get(key)
    if rule is not None:
        return rule
    rule = _reference_rule(n).remap(a, b)
    with _rules_lock:
        return _rules.setdefault(key, rule)


def _evaluate_at_nodes(f, pts):
    try:
        vals = np.asarray(f(pts), dtype=np.float64)
        if vals.shape != pts.shape:
            vals = np.broadcast_to(vals, pts.shape)
        if np.all(np.isfinite(vals)):
            return vals
    except Exception:
        pass
    # locate the offending node one point at a time
    out = np.empty_like(pts)
    for i, x in enumerate(pts):
        try:
            v = float(np.asarray(f(np.array([x]))).ravel()[0])
        except Exception as exc:
            raise FunctionEvaluationError(i, float(x), exc) from exc
        if not np.isfinite(v):
            raise FunctionEvaluationError(i, float(x), ValueError(f"non-finite value {v}"))
        out[i] = v
    return out


def integrate(rule, f):
    """Approximate the integral of ``f`` over ``rule.interval``.

    ``f`` is any callable accepting a numpy array, including a
    :class:`~legkit.functions.FunctionSpec`.  Failures are re-raised as
    :class:`FunctionEvaluationError` carrying the node index.
    """
    vals = _evaluate_at_nodes(f, rule.points)
    total = 0.0
    for w, v in zip(rule.weights, vals):
        total += w * v
    return float(rule.half_length * total)
