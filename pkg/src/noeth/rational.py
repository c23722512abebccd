"""Exact rational parsing and formatting."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to ``Fraction``.

    Floats are rejected: every value in this library is exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError(f"not a rational literal: {value!r}") from None
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def fmt(q) -> str:
    """Format as ``"a/b"``, always with an explicit denominator."""
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"
