"""Exact rational parameter handling shared across the package."""

from __future__ import annotations

from fractions import Fraction


def as_fraction(value) -> Fraction:
    """Coerce a threshold/tolerance parameter to an exact Fraction.

    Ints, Fractions and strings convert exactly.  Floats are interpreted with
    decimal intent: ``as_fraction(0.1) == Fraction(1, 10)``, not the binary
    value of the float.  Every density, tolerance and margin parameter in this
    package goes through this helper so that comparisons are exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def rational_json(value):
    """JSON-friendly form of an exact rational.

    Integral values become ints, non-integral ones strings like ``"13/3"``,
    None passes through.  Keeps report files byte-stable with no floats.
    """
    if value is None:
        return None
    frac = Fraction(value)
    if frac.denominator == 1:
        return int(frac)
    return f"{frac.numerator}/{frac.denominator}"
