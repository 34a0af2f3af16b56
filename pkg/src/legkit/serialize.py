"""Deterministic JSON/CSV rendering.

Floats are written with 17 significant digits (enough to round-trip any
double), rationals as ``"p/q"`` strings and integers plainly.
"""
import json
import math
from fractions import Fraction

import numpy as np

__all__ = ["format_float", "format_rational", "parse_rational", "dumps", "rows_to_csv"]


def format_float(v):
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"cannot serialise non-finite value {v}")
    if v == 0:
        return "0.0" if math.copysign(1, v) > 0 else "-0.0"
    text = format(v, ".17g")
    # keep floats distinguishable from ints after a JSON round trip
    return text if any(c in text for c in ".en") else text + ".0"


def format_rational(q):
    """Integers stay ints; other rationals become "p/q" strings."""
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(v):
    return Fraction(v) if isinstance(v, (int, str)) else Fraction(float(v))


def _render(obj, out):
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        out.append(json.dumps(bool(obj) if obj is not None else None))
    elif isinstance(obj, Fraction):
        out.append(json.dumps(format_rational(obj)))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k)))
            out.append(": ")
            _render(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _render(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj):
    """JSON text for ``obj`` with fixed float formatting and insertion-ordered keys."""
    out = []
    _render(obj, out)
    return "".join(out)


def rows_to_csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_float(v) if isinstance(v, (float, np.floating)) else str(v) for v in row))
    return "\n".join(lines) + "\n"
