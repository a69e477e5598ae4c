from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from charslope.algebra import Poly
from charslope.errors import ArityError, DegeneratePresentation, PreconditionError
from charslope.examples import cusp_e1, flagship_e5, mixed_e6
from charslope.geometry import Chart, CoordPoint, enumerate_coord_points
from charslope.presentation import (AdaptationCase, PPresentation, a_term, adaptation_case,
                                    change_section, clean_at, clean_simultaneous, elim_order,
                                    elimination_generators, full_min_slope, in_f_is_pure,
                                    is_singular_at, is_well_adapted, point_table, sing_locus,
                                    slope_at, v_ord)
from charslope.verify import cleaning_chain, random_poly, random_presentation
from conftest import F2, F3

X, XY = CoordPoint([0]), CoordPoint([0, 1])


def _pres(F, e, coeffs, names):
    return PPresentation.build(e, coeffs, Chart(names))


def _xy(F=F2):
    return Poly.var(F, 2, 0), Poly.var(F, 2, 1)


def test_cusp_invariants():
    pres = cusp_e1()
    x = Poly.var(F2, 1, 0)
    assert pres.elim.gens == ((x ** 2, 1),)
    assert slope_at(pres, X) == Fraction(3, 2)
    assert adaptation_case(pres, X) is AdaptationCase.B1
    assert v_ord(pres, X) == Fraction(3, 2)


def test_mixed_example_uses_a_resultant_generator():
    pres = mixed_e6()
    x, _ = _xy()
    assert pres.elim.gens == ((x ** 2, 2),)
    assert elim_order(pres, XY) == 1
    assert slope_at(pres, XY) == 1
    assert adaptation_case(pres, XY) is AdaptationCase.A
    assert not in_f_is_pure(pres, XY)


def test_purely_inseparable_elimination_over_f3():
    x, y = _xy(F3)
    zero = Poly.zero(F3, 2)
    pres = _pres(F3, 1, [zero, zero, x ** 4 * y ** 2], ("x", "y"))
    assert elim_order(pres, XY) == Fraction(5, 2)
    assert a_term(pres, XY) == 2
    assert slope_at(pres, XY) == 2
    assert adaptation_case(pres, XY) is AdaptationCase.B2
    assert (x ** 4, 1) in pres.elim.gens


def test_flagship_v_ord():
    assert v_ord(flagship_e5(), XY) == 4


def test_arity_is_checked():
    x, _ = _xy()
    with pytest.raises(ArityError):
        _pres(F2, 1, [x], ("x", "y"))
    with pytest.raises(ArityError):
        PPresentation.build(1, [Poly.zero(F2, 1), Poly.var(F2, 1, 0)], Chart(("x", "y")))


def test_sing_locus_of_crossing_curves():
    x, y = _xy()
    pres = _pres(F2, 1, [Poly.zero(F2, 2), x ** 3 * y ** 3], ("x", "y"))
    loc = sing_locus(pres)
    assert loc.origin_singular
    assert loc.maximal == (CoordPoint([0]), CoordPoint([1]))


@pytest.mark.parametrize("a2", [lambda x: x ** 2, lambda x: x ** 2 + x ** 4])
def test_codimension_one_singular_locus_is_rejected(a2):
    x = Poly.var(F2, 1, 0)
    pres = _pres(F2, 1, [Poly.zero(F2, 1), a2(x)], ("x",))
    with pytest.raises(DegeneratePresentation):
        sing_locus(pres)


def test_simultaneous_cleaning_example():
    x, y = _xy()
    pres = _pres(F2, 1, [Poly.zero(F2, 2), x ** 2 * y ** 2 + x ** 3 * y ** 3], ("x", "y"))
    out = clean_simultaneous(pres, XY, X)
    assert out.a_top == x ** 3 * y ** 3
    assert is_well_adapted(out, X) and is_well_adapted(out, XY)


def test_simultaneous_cleaning_needs_nested_points():
    with pytest.raises(PreconditionError):
        clean_simultaneous(flagship_e5(), X, XY)


def test_cleaning_raises_slope_each_pass():
    pres = cleaning_chain(2, 1, 3)
    out, log = clean_at(pres, X)
    assert len(log) == 3
    assert [s.slope_before for s in log] == [1, 2, 3]
    assert log[-1].slope_after == Fraction(7, 2)
    assert adaptation_case(out, X) is AdaptationCase.B1


def test_cleaning_at_translated_point_is_refused():
    with pytest.raises(PreconditionError):
        clean_at(cusp_e1(), CoordPoint([0], translation=[1]))


def test_point_table_rows():
    rows = point_table(flagship_e5())
    assert [(sorted(r.point.vars), r.v_ord) for r in rows] == [
        ([0, 1], 4), ([0], Fraction(3, 2)), ([1], Fraction(5, 2))]


def _random(seed: int, p: int = 2, e: int = 1) -> PPresentation:
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    return random_presentation(rng, p, e, n, frozenset(range(n)))


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 1), (3, 1), (2, 2)]))
def test_cleaning_yields_well_adapted(seed, pe):
    pres = _random(seed, *pe)
    for pt in enumerate_coord_points(pres.nvars):
        out, log = clean_at(pres, pt)
        assert is_well_adapted(out, pt)
        assert slope_at(out, pt) >= slope_at(pres, pt)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 1), (3, 1)]))
def test_v_ord_is_section_independent(seed, pe):
    p, e = pe
    pres = _random(seed, p, e)
    rng = random.Random(seed + 1)
    org = pres.origin()
    if not is_singular_at(pres, org):
        return
    alpha = random_poly(rng, pres.field, pres.nvars, frozenset(range(pres.nvars)), 1, 2, other=0)
    moved = change_section(pres, rng.randint(1, p - 1), alpha)
    assert v_ord(moved, org) == v_ord(pres, org)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_two_term_slope_matches_full_min(seed):
    pres = _random(seed, 2, 1)
    for pt in enumerate_coord_points(pres.nvars):
        assert slope_at(pres, pt) == full_min_slope(pres, pt)


def test_elimination_generators_checks_arity():
    with pytest.raises(ArityError):
        elimination_generators([Poly.zero(F2, 1)], 1)
