"""Exact extended nonnegative rationals, the value lattice ``[0, inf]``.

Finite values are plain ``int`` or :class:`fractions.Fraction` objects; the
top element is the singleton :data:`INF`.  Nothing here ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union


class _Infinity:
    """Top of ``[0, inf]``.  Absorbs addition, compares above every rational."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return "INF"

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("approachnorm.INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INF = _Infinity()

ExtValue = Union[int, Fraction, _Infinity]


def is_inf(x) -> bool:
    return x is INF


def _norm(fr: Fraction) -> ExtValue:
    return fr.numerator if fr.denominator == 1 else fr


def ext(x) -> ExtValue:
    """Parse *x* into an exact extended value.

    Accepts ``INF``, ints, ``Fraction``s, floats (converted exactly, ``inf``
    allowed) and strings: ``"inf"``, ``"∞"``, integers, ``"p/q"`` and
    decimals such as ``"0.25"``.  Negative values raise ``ValueError``.
    """
    if x is INF:
        return INF
    if isinstance(x, bool):
        raise TypeError("booleans are not distances")
    if isinstance(x, str):
        t = x.strip().lower()
        if t in ("inf", "+inf", "infinity", "∞"):
            return INF
        try:
            fr = Fraction(t)
        except ValueError:
            raise ValueError(f"cannot parse {x!r} as an extended rational") from None
    elif isinstance(x, float):
        if x == float("inf"):
            return INF
        if x != x:
            raise ValueError("NaN is not a distance")
        fr = Fraction(x)
    elif isinstance(x, Rational):
        fr = Fraction(x)
    else:
        raise TypeError(f"cannot interpret {type(x).__name__} as an extended rational")
    if fr < 0:
        raise ValueError(f"negative value {x!r}")
    return _norm(fr)


def tsub(x: ExtValue, y: ExtValue) -> ExtValue:
    """Truncated subtraction ``(x - y) v 0`` with ``INF - y = INF``, ``x - INF = 0``."""
    if y is INF:
        return 0
    if x is INF:
        return INF
    d = x - y
    return d if d > 0 else 0


def fmt(x: ExtValue) -> str:
    """Serialize a value the way the JSON formats expect (``"inf"``, ``"3"``, ``"1/2"``)."""
    if x is INF:
        return "inf"
    return str(x)


def half(x: ExtValue) -> ExtValue:
    if x is INF:
        return INF
    return _norm(Fraction(x) / 2)


def mul(x: ExtValue, c) -> ExtValue:
    """Multiply a value by a finite nonnegative rational factor."""
    if x is INF:
        return INF if c != 0 else 0
    return _norm(Fraction(x) * Fraction(c))
