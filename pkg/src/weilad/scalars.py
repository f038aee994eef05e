"""Scalar modes.

Two coefficient modes exist side by side and are never mixed implicitly:

* ``rational``: arbitrary-precision ``fractions.Fraction``; all ring laws are
  checked exactly in this mode.
* ``float``: IEEE doubles, required by the transcendental primitives.

Integers and Fractions count as rational; conversions are explicit via
:func:`convert`.  Values that carry their own ``scalar_mode`` attribute
(coefficient vectors used as scalars in nested evaluation) report that mode.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ScalarModeMismatch

RATIONAL = "rational"
FLOAT = "float"

MODES = (RATIONAL, FLOAT)


def mode_of(value) -> str:
    mode = getattr(value, "scalar_mode", None)
    if mode is not None:
        return mode
    if isinstance(value, float):
        return FLOAT
    if isinstance(value, (int, Fraction)):
        return RATIONAL
    raise TypeError("not a scalar: %r" % (value,))


def ensure_same_mode(a, b) -> str:
    ma, mb = mode_of(a), mode_of(b)
    if ma != mb:
        raise ScalarModeMismatch("cannot combine %s and %s scalars" % (ma, mb))
    return ma


def convert(value, mode: str):
    """Explicitly convert a plain scalar to the requested mode."""
    if mode == RATIONAL:
        if isinstance(value, float):
            raise ScalarModeMismatch("refusing implicit float -> rational; pass a Fraction")
        return Fraction(value)
    if mode == FLOAT:
        return float(value)
    raise ValueError("unknown scalar mode %r" % (mode,))


def parse_scalar(text: str) -> Fraction:
    """Parse ``3``, ``3/4``, ``0.25`` or ``1e-3`` into an exact Fraction."""
    return Fraction(text.strip())


def format_scalar(value) -> str:
    """Exact fraction text in rational mode, shortest round-trip decimal in float mode."""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (int, Fraction)):
        f = Fraction(value)
        if f.denominator == 1:
            return str(f.numerator)
        return "%d/%d" % (f.numerator, f.denominator)
    return str(value)


def scalar_to_json(value):
    """Floats stay JSON numbers; rationals become exact ``"p/q"`` strings."""
    if isinstance(value, float):
        return value
    return format_scalar(value)
