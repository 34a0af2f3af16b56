"""Dense univariate polynomials with exact rational coefficients."""
from fractions import Fraction
from numbers import Rational

import numpy as np

__all__ = ["ExactPoly", "X", "to_fraction"]


def to_fraction(value):
    """Convert an int, Fraction, float or "p/q" string to a Fraction without rounding."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    return Fraction(float(value))


class ExactPoly:
    """Polynomial ``sum(coeffs[k] * x**k)`` over the rationals.

    Instances are immutable.  Trailing zero coefficients are stripped, so the
    zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c):
        return cls([c])

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        return len(self._coeffs) - 1

    def is_zero(self):
        return not self._coeffs

    def coeff(self, k):
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else Fraction(0)

    def leading(self):
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ExactPoly):
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return ExactPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return ExactPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly([-c for c in self._coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, np.integer)):
            c = to_fraction(other)
            return ExactPoly([c * a for a in self._coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return ExactPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return ExactPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, np.integer)):
            c = to_fraction(other)
            return ExactPoly([a / c for a in self._coeffs])
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ExactPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    # calculus --------------------------------------------------------------

    def derivative(self, order=1):
        cs = list(self._coeffs)
        for _ in range(order):
            cs = [k * c for k, c in enumerate(cs)][1:]
        return ExactPoly(cs)

    def antiderivative(self):
        """Antiderivative with zero constant term."""
        return ExactPoly([0] + [c / (k + 1) for k, c in enumerate(self._coeffs)])

    def integrate(self, a, b):
        """Exact definite integral over [a, b] for rational endpoints."""
        F = self.antiderivative()
        return F.evaluate(b) - F.evaluate(a)

    def compose(self, inner):
        """Return ``self(inner(x))`` by Horner's scheme on polynomials."""
        inner = self._coerce(inner)
        result = ExactPoly()
        for c in reversed(self._coeffs):
            result = result * inner + c
        return result

    # evaluation ------------------------------------------------------------

    def evaluate(self, x):
        """Exact value at a rational point (floats are converted exactly)."""
        x = to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x):
        """Exact at rational input; Horner in floating point for floats and arrays."""
        if isinstance(x, (int, Fraction, np.integer, str)):
            return self.evaluate(x)
        x = np.asarray(x, dtype=np.float64)
        acc = np.zeros_like(x)
        for c in reversed(self._coeffs):
            acc = acc * x + float(c)
        return acc if acc.ndim else float(acc)

    def is_integral(self):
        return all(c.denominator == 1 for c in self._coeffs)

    def integer_coeffs(self):
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [c.numerator for c in self._coeffs]

    def __repr__(self):
        return f"ExactPoly([{', '.join(str(c) for c in self._coeffs)}])"

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}" if mono else f"{abs(c)}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


X = ExactPoly([0, 1])
