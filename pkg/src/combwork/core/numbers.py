"""Exact rational helpers.

All user-visible densities and probabilities are ``fractions.Fraction``
values; this module only adds the canonical string form used in
certificates and a couple of small integer utilities.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def fmt_rational(q: Fraction | int) -> str:
    """Render as ``p`` or ``p/q`` in lowest terms."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        if int(q) <= 0:
            raise ValueError(f"non-positive denominator in {text!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(x: int):
    """Indices of set bits of ``x``, ascending."""
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


def v2(x: int, cap: int) -> int:
    """2-adic valuation of ``x`` capped at ``cap``; ``v2(0) == cap``."""
    if x == 0:
        return cap
    v = 0
    while x % 2 == 0 and v < cap:
        x //= 2
        v += 1
    return v
