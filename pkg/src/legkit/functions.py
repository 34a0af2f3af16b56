"""Integrand descriptions: builtin analytic forms, exact polynomials and sampled tables."""
import csv
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, InputFileError, InvalidIntervalError
from .exactpoly import ExactPoly

__all__ = ["FunctionSpec", "BUILTIN_NAMES", "builtin", "load_samples", "parse_function"]

BUILTIN_NAMES = ("1", "x^k", "sign", "abs", "exp", "cos", "sin", "Pk", "const:v")


@dataclass(frozen=True, eq=False)
class FunctionSpec:
    """A real function on ``domain`` that can be sampled on numpy arrays.

    ``kind`` is ``"builtin"``, ``"poly"``, ``"sampled"`` or ``"callable"``.
    ``jump_points`` lists interior discontinuities; projection splits its
    integrals there.  Undeclared jumps are integrated as if smooth, which
    silently costs accuracy.
    """

    kind: str
    domain: tuple
    func: Optional[Callable] = None
    poly: Optional[ExactPoly] = None
    samples: Optional[tuple] = None
    jump_points: tuple = ()
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        a, b = float(self.domain[0]), float(self.domain[1])
        if not b > a:
            raise InvalidIntervalError(f"domain needs b > a, got [{a}, {b}]")
        object.__setattr__(self, "domain", (a, b))
        jumps = tuple(float(j) for j in self.jump_points)
        if any(not a < j < b for j in jumps) or list(jumps) != sorted(set(jumps)):
            raise DomainError("jump points must be sorted, distinct and strictly inside the domain")
        object.__setattr__(self, "jump_points", jumps)
        if self.kind == "sampled":
            xs, ys = self.samples
            if xs.shape[0] < 2:
                raise DomainError("a sampled table needs at least two points")
            if np.any(np.diff(xs) <= 0):
                raise DomainError("sample abscissae must be strictly increasing")
            if xs[0] > a or xs[-1] < b:
                raise DomainError("sample table does not span the domain")

    @classmethod
    def from_callable(cls, func, domain=(-1.0, 1.0), jump_points=(), name="callable"):
        return cls("callable", tuple(domain), func=func, jump_points=tuple(jump_points), name=name)

    @classmethod
    def polynomial(cls, poly, domain=(-1.0, 1.0)):
        return cls("poly", tuple(domain), poly=poly, name=str(poly))

    @classmethod
    def sampled(cls, xs, ys, domain=None, jump_points=(), name="samples"):
        xs = np.asarray(xs, dtype=np.float64)
        ys = np.asarray(ys, dtype=np.float64)
        if xs.shape != ys.shape or xs.ndim != 1:
            raise DomainError("sample abscissae and values must be 1-d and the same length")
        if domain is None:
            domain = (xs[0], xs[-1]) if xs.shape[0] else (0.0, 0.0)
        return cls("sampled", tuple(domain), samples=(xs, ys), jump_points=tuple(jump_points), name=name)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.kind == "poly":
            out = self.poly(x)
        elif self.kind == "sampled":
            xs, ys = self.samples
            if np.any((x < xs[0]) | (x > xs[-1])):
                raise DomainError("evaluation point outside the sample table")
            out = np.interp(x, xs, ys)
        else:
            out = self.func(x)
        return np.broadcast_to(np.asarray(out, dtype=np.float64), x.shape).copy() if np.ndim(x) else float(out)

    def with_domain(self, domain):
        """Same function viewed on a different domain; jump points outside it are dropped."""
        a, b = float(domain[0]), float(domain[1])
        jumps = tuple(j for j in self.jump_points if a < j < b)
        return FunctionSpec(self.kind, (a, b), self.func, self.poly, self.samples, jumps, self.name, self.meta)


_POWER = re.compile(r"^x\^(\d+)$")
_LEGENDRE = re.compile(r"^P(\d+)$")


def builtin(name, domain=(-1.0, 1.0)):
    """Look up a builtin integrand by name.

    Recognised names: ``1``, ``x``, ``x^k``, ``sign``, ``abs``, ``exp``,
    ``cos``, ``sin``, ``Pk`` (the Legendre polynomial of degree k) and
    ``const:v``.
    """
    from .legendre import legendre_poly

    a, b = float(domain[0]), float(domain[1])
    interior_zero = (0.0,) if a < 0.0 < b else ()
    name = name.strip()
    if name == "1":
        return FunctionSpec.polynomial(ExactPoly([1]), domain)
    if name == "x":
        return FunctionSpec.polynomial(ExactPoly([0, 1]), domain)
    m = _POWER.match(name)
    if m:
        return FunctionSpec.polynomial(ExactPoly.monomial(int(m.group(1))), domain)
    m = _LEGENDRE.match(name)
    if m:
        k = int(m.group(1))
        spec = FunctionSpec.polynomial(legendre_poly(k), domain)
        return FunctionSpec("poly", spec.domain, poly=spec.poly, name=name)
    if name.startswith("const:"):
        try:
            v = float(name.split(":", 1)[1])
        except ValueError:
            raise DomainError(f"bad constant in {name!r}") from None
        return FunctionSpec.from_callable(lambda x, v=v: np.full(np.shape(x), v), domain, name=name)
    if name == "sign":
        return FunctionSpec.from_callable(np.sign, domain, interior_zero, name)
    if name == "abs":
        # kink, not a jump, but splitting there still helps the quadrature
        return FunctionSpec.from_callable(np.abs, domain, interior_zero, name)
    if name == "exp":
        return FunctionSpec.from_callable(np.exp, domain, name=name)
    if name == "cos":
        return FunctionSpec.from_callable(np.cos, domain, name=name)
    if name == "sin":
        return FunctionSpec.from_callable(np.sin, domain, name=name)
    raise DomainError(f"unknown builtin function {name!r}; known: {', '.join(BUILTIN_NAMES)}")


def load_samples(path, domain=None):
    """Read a CSV table of ``x,y`` rows (optional header) into a sampled FunctionSpec."""
    xs, ys = [], []
    try:
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                if len(row) < 2:
                    raise InputFileError(f"{path}:{lineno}: expected two columns x,y")
                try:
                    x, y = float(row[0]), float(row[1])
                except ValueError:
                    if lineno == 1 and not xs:
                        continue  # header
                    raise InputFileError(f"{path}:{lineno}: cannot parse {row!r} as numbers") from None
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise InputFileError(f"{path}:{lineno}: non-finite value")
                if xs and x <= xs[-1]:
                    raise InputFileError(f"{path}:{lineno}: x values must be strictly increasing")
                xs.append(x)
                ys.append(y)
    except FileNotFoundError:
        raise InputFileError(f"{path}: file not found") from None
    except OSError as exc:
        raise InputFileError(f"{path}: {exc}") from None
    if len(xs) < 2:
        raise InputFileError(f"{path}: need at least two samples")
    return FunctionSpec.sampled(xs, ys, domain=domain, name=str(path))


def parse_function(text, domain=(-1.0, 1.0)):
    """Builtin name, or ``@path`` / an existing ``*.csv`` path for a sample table."""
    if text.startswith("@"):
        return load_samples(text[1:], domain)
    if text.endswith(".csv"):
        return load_samples(text, domain)
    return builtin(text, domain)
