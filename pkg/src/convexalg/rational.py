"""Exact rational arithmetic helpers.

All coordinates, weights, and parameters in this package are exact
rationals backed by ``gmpy2.mpq``: arbitrary precision, always stored in
lowest terms with a positive denominator.  This module centralises
construction, parsing, and the ``"p/q"`` wire format so the rest of the
code never touches gmpy2 directly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from gmpy2 import is_square, isqrt, mpq

Rat = mpq
RatLike = Union[int, str, Fraction, mpq]

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


def rat(value: RatLike, den: int | None = None) -> mpq:
    """Build an exact rational from an int, a "p/q" string, a Fraction, or a pair."""
    if den is not None:
        return mpq(value, den)
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


def rat_str(q: RatLike) -> str:
    """Canonical "numerator/denominator" form, always with an explicit denominator."""
    q = mpq(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(text: str) -> mpq:
    """Parse "p/q" or a plain integer string into an exact rational."""
    try:
        return mpq(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def in_unit_interval(q: mpq) -> bool:
    return ZERO <= q <= ONE


def exact_sqrt(q: mpq) -> mpq | None:
    """Exact square root of a nonnegative rational, or None when irrational."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    if not (is_square(num) and is_square(den)):
        return None
    return mpq(isqrt(num), isqrt(den))
