from __future__ import annotations

import pytest

from charslope.algebra import Poly
from charslope.errors import ArityError, PreconditionError
from charslope.geometry import (Center, Chart, CoordPoint, Divisor, DivisorLedger, TreeNode,
                                blowup_substitution, enumerate_coord_points, origin,
                                translate_origin)
from conftest import F2, F3


def test_coord_points_largest_first():
    pts = enumerate_coord_points(3)
    assert len(pts) == 7
    assert pts[0] == origin(3)
    assert [len(p.vars) for p in pts] == [3, 2, 2, 2, 1, 1, 1]
    assert pts[-1].label("xyz") == "{z}"


def test_point_and_center_labels():
    assert CoordPoint([1, 0]).label(("x", "y")) == "{x,y}"
    assert CoordPoint([0]).issubset(CoordPoint([0, 1]))
    assert Center(True, [1]).label(("x", "y")) == "<z,y>"
    assert Center(False, [0, 1]).label(("x", "y"), "w") == "<x,y>"


def test_ledger_validation():
    with pytest.raises(PreconditionError):
        DivisorLedger((Divisor("A", 0, 1), Divisor("B", 0, 2)), 2)
    with pytest.raises(PreconditionError):
        DivisorLedger((Divisor("A", 0, 1), Divisor("A", 1, 2)), 2)
    with pytest.raises(PreconditionError):
        DivisorLedger((Divisor("A", 0, -1),), 2)
    with pytest.raises(PreconditionError):
        DivisorLedger((), 0)
    with pytest.raises(PreconditionError):
        Chart(("x",), ledger=DivisorLedger((Divisor("A", 3, 1),), 2))


def test_ledger_rescale_keeps_exponents():
    L = DivisorLedger((Divisor("x", 0, 3),), 2)
    R = L.rescaled(6)
    assert R.s == 6 and R.get("x").h == 9 and R.q(R.get("x")) == L.q(L.get("x"))
    with pytest.raises(PreconditionError):
        L.rescaled(3)


def test_blowup_chart_bookkeeping():
    L = DivisorLedger((Divisor("x", 0, 3), Divisor("y", 1, 5)), 2)
    chart = Chart(("x", "y"), ledger=L)
    child, sub = blowup_substitution(chart, Center(True, [0, 1]), 0, new_exponent=6)
    assert child.id == "c0/x"
    assert child.ledger.get("x").carrier is None          # strict transform misses the chart
    assert child.ledger.get("y").carrier == 1
    assert child.ledger.get("E1") == Divisor("E1", 0, 6)
    x, y = Poly.var(F2, 2, 0), Poly.var(F2, 2, 1)
    assert sub.apply(y) == x * y and sub.apply(x) == x
    grand, _ = blowup_substitution(child, Center(True, [1]), 1)
    assert grand.id == "c0/x/y" and grand.new_divisor_id() == "E3"


def test_blowup_substitution_rejects_bad_chart_variable():
    chart = Chart(("x", "y"))
    with pytest.raises(PreconditionError):
        blowup_substitution(chart, Center(True, [0]), 1)
    with pytest.raises(PreconditionError):
        blowup_substitution(chart, Center(True, []), 0)
    with pytest.raises(ArityError):
        blowup_substitution(chart, Center(True, [0, 5]), 0)


def test_translate_origin_hides_divisors_off_the_new_origin():
    L = DivisorLedger((Divisor("x", 0, 1), Divisor("y", 1, 1)), 1)
    chart = Chart(("x", "y"), ledger=L)
    x = Poly.var(F3, 2, 0)
    new_chart, (g,) = translate_origin(chart, [x * x], [1, 0])
    assert new_chart.ledger.get("x").carrier is None
    assert new_chart.ledger.get("y").carrier == 1
    assert g == (x + 1) * (x + 1)


def test_tree_walk_is_sorted_by_chart_id():
    a, b, c = Chart(("x",), id="c0"), Chart(("x",), id="c0/y"), Chart(("x",), id="c0/x")
    root = TreeNode(a, children=[TreeNode(b), TreeNode(c)])
    assert [n.chart.id for n in root.walk()] == ["c0", "c0/x", "c0/y"]
    assert [n.chart.id for n in root.leaves()] == ["c0/x", "c0/y"]
