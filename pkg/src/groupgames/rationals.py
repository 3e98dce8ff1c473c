"""Exact rational parsing and formatting."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["as_fraction", "format_fraction", "parse_fraction"]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: every quantity in this package is exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def parse_fraction(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty rational literal")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational literal {text!r} (expected 'p/q' or an integer)") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_fraction(x) -> str:
    """Reduced ``"p/q"`` with positive denominator; integers keep ``/1``."""
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"
