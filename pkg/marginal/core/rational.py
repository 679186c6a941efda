"""
Exact rationals.

``marginal`` computes over :class:`fractions.Fraction` throughout; this module
holds the conversions between text and ``Fraction`` and the bitwidth measure
used by integer-mode evaluation.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Rational = Fraction
"""Exact rational; always in lowest terms with a positive denominator."""

RationalLike = Union[Fraction, int, str]

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.\d*|\.\d+)$")


def is_rational_token(token: str) -> bool:
    """True if ``token`` is written ``a``, ``a/b`` or as an exact decimal."""
    return bool(_RATIONAL.match(token) or _DECIMAL.match(token))


def parse_rational(token: str) -> Fraction:
    """Parses ``a``, ``a/b`` or a decimal such as ``0.05`` exactly.

    Raises:
        ValueError: malformed token or a zero denominator.

    """
    token = token.strip()
    if not is_rational_token(token):
        raise ValueError(f"not a rational: '{token}'")
    if "/" in token and int(token.split("/", 1)[1]) == 0:
        raise ValueError(f"zero denominator in '{token}'")
    return Fraction(token)


def as_rational(value: RationalLike) -> Fraction:
    """Coerces ints, Fractions and rational strings; floats are refused."""
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"refusing inexact value {value!r} of type {type(value).__name__}")


def as_point(values: Iterable[RationalLike]) -> Tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


def format_rational(value: Fraction) -> str:
    """``a/b``, or ``a`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction, places: int = 12) -> str:
    """Fixed-point rendering rounded half-to-even; display only."""
    value = Fraction(value)
    scaled = round(value * 10 ** places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if not places:
        return f"{sign}{digits}"
    whole, frac = digits[:-places], digits[-places:]
    frac = frac.rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def bitwidth(value: Union[int, Fraction]) -> int:
    """Bits needed to write ``value`` in base two, sign bit included.

    For a rational the larger of numerator and denominator is measured, so
    that integers measure the same either way: ``bitwidth(7) == 4``.

    """
    value = Fraction(value)
    magnitude = max(abs(value.numerator).bit_length(), value.denominator.bit_length())
    return magnitude + 1


def encoded_length(values: Sequence[Union[int, Fraction]]) -> int:
    """Total encoded length N of a point."""
    return sum(bitwidth(v) for v in values)
