"""Exact scalars: rationals extended with two infinities, and dyadic rationals.

Every combinatorial comparison in this package goes through these types so
that order decisions are exact.  Floating point is confined to the strip
transforms and mutation clocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

RatLike = Union[int, str, Fraction]


@total_ordering
class Ext:
    """A rational number or one of the symbols -oo / +oo, totally ordered.

    Arithmetic is only defined on finite values; comparison is always defined.
    """

    __slots__ = ("_sign", "_value")

    def __init__(self, value: RatLike, _sign: int = 0):
        if _sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        self._sign = _sign
        self._value = Fraction(value) if _sign == 0 else None

    @property
    def finite(self) -> bool:
        return self._sign == 0

    @property
    def value(self) -> Fraction:
        if self._value is None:
            raise ValueError("infinite Ext has no rational value")
        return self._value

    def _key(self):
        # (-1, None) < (0, q) < (1, None); Fraction comparisons handle the middle.
        return self._sign, self._value

    def __eq__(self, other) -> bool:
        other = as_ext(other)
        return self._sign == other._sign and self._value == other._value

    def __lt__(self, other) -> bool:
        other = as_ext(other)
        if self._sign != other._sign:
            return self._sign < other._sign
        if self._sign != 0:
            return False
        return self._value < other._value

    def __hash__(self):
        return hash(self._key())

    def __neg__(self) -> "Ext":
        if self._sign != 0:
            return Ext(0, -self._sign)
        return Ext(-self._value)

    def __float__(self) -> float:
        if self._sign < 0:
            return float("-inf")
        if self._sign > 0:
            return float("inf")
        return float(self._value)

    def __str__(self) -> str:
        if self._sign < 0:
            return "-inf"
        if self._sign > 0:
            return "+inf"
        return str(self._value)

    def __repr__(self) -> str:
        return f"Ext({self})"


NEG_INF = Ext(0, -1)
POS_INF = Ext(0, 1)


def as_ext(x) -> Ext:
    if isinstance(x, Ext):
        return x
    if isinstance(x, (int, Fraction)):
        return Ext(x)
    if isinstance(x, str):
        s = x.strip()
        if s in ("-inf", "-oo"):
            return NEG_INF
        if s in ("+inf", "inf", "+oo", "oo"):
            return POS_INF
        return Ext(Fraction(s))
    raise TypeError(f"cannot interpret {x!r} as an extended rational")


def ext_str(x: Ext) -> str:
    return str(x)


@dataclass(frozen=True)
class Dyadic:
    """A reduced dyadic rational numerator / 2**exponent.

    Stored reduced: the numerator is odd unless the exponent is 0, so the
    depth (the exponent after reduction) is well defined.
    """

    numerator: int
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be nonnegative")
        if self.exponent > 0 and self.numerator % 2 == 0:
            raise ValueError("not reduced: even numerator with positive exponent")

    @property
    def depth(self) -> int:
        return self.exponent

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 2 ** self.exponent)

    @staticmethod
    def from_fraction(q: Fraction) -> "Dyadic":
        d = q.denominator
        if d & (d - 1) != 0:
            raise ValueError(f"{q} is not dyadic")
        return Dyadic(q.numerator, d.bit_length() - 1)

    def __str__(self) -> str:
        return str(self.as_fraction())


def dyadic_depth(q: Fraction) -> int | None:
    """Depth of q as a dyadic rational, or None when q is not dyadic."""
    d = q.denominator
    if d & (d - 1) != 0:
        return None
    return d.bit_length() - 1


def is_dyadic(q: Fraction) -> bool:
    return dyadic_depth(q) is not None
