"""Hand-checkable presentations used by tests, suites and the README."""
from __future__ import annotations

from .algebra import FieldSpec, Poly
from .geometry import Chart, Divisor, DivisorLedger
from .presentation import PPresentation

F2 = FieldSpec(2)


def cusp_e1(s: int = 2) -> PPresentation:
    """z^2 + x^3 over F_2."""
    chart = Chart(("x",), ledger=DivisorLedger((), s))
    return PPresentation.build(1, [Poly.zero(F2, 1), Poly(F2, 1, {(3,): 1})], chart)


def flagship_e5() -> PPresentation:
    """z^2 + x^3 y^5 over F_2 with ledger {x: 3, y: 5}, s = 2."""
    ledger = DivisorLedger((Divisor("x", 0, 3), Divisor("y", 1, 5)), 2)
    chart = Chart(("x", "y"), ledger=ledger)
    return PPresentation.build(1, [Poly.zero(F2, 2), Poly(F2, 2, {(3, 5): 1})], chart)


def mixed_e6() -> PPresentation:
    """z^2 + x z + y^3 over F_2."""
    chart = Chart(("x", "y"), ledger=DivisorLedger((), 2))
    return PPresentation.build(1, [Poly(F2, 2, {(1, 0): 1}), Poly(F2, 2, {(0, 3): 1})], chart)
