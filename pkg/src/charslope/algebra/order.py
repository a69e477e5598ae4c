"""Extended orders: nonnegative rationals plus a +infinity sentinel."""
from __future__ import annotations

from fractions import Fraction
from typing import Union


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("charslope.INF")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INF - INF")
        return self

    def __truediv__(self, other):
        return self

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

Order = Union[Fraction, _Infinity]


def ratio(num, den: int) -> Order:
    """num/den as an exact Fraction, passing INF through."""
    if num is INF:
        return INF
    return Fraction(num, den)


def is_integer(x: Order) -> bool:
    return x is not INF and Fraction(x).denominator == 1


def format_order(x) -> str:
    """Rationals always print as "num/den"; infinity prints as "inf"."""
    if x is INF:
        return "inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_order(s: str) -> Order:
    if s == "inf":
        return INF
    return Fraction(s)
