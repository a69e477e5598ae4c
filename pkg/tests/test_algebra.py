from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import assume, given, strategies as st

from charslope.algebra import (INF, FieldSpec, Poly, det, format_order, from_presentation,
                               hasse_z, is_irreducible, is_prime, multi_indices, parse_order,
                               resultant_norm, resultant_sylvester, resultant_z, shift_z)
from charslope.algebra.zpoly import shift
from charslope.errors import ArityError, FieldError, InexactDivision
from conftest import F2, F3, F4, F9, FIELDS, fields, polys


# -- fields -------------------------------------------------------------------

def test_is_prime_small():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_irreducibility():
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)       # (t+1)^2
    assert is_irreducible((1, 0, 1), 3)
    assert not is_irreducible((2, 0, 1), 3)       # t^2 - 1


@pytest.mark.parametrize("args", [(4,), (1,), (2, 2, (1, 0, 1)), (2, 2), (2, 2, (1, 1))])
def test_bad_fields_rejected(args):
    with pytest.raises(FieldError):
        FieldSpec(*args)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.q}")
def test_field_axioms_exhaustive(F):
    els = list(F.elements())
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
    for a, b, c in itertools.islice(itertools.product(els, repeat=3), 800):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.q}")
def test_frobenius_root(F):
    for e in range(1, 4):
        for c in F.elements():
            assert F.pow(F.pe_root(c, e), F.p ** e) == c


def test_f4_square_root_of_t():
    t = F4.from_vector([0, 1])
    r = F4.pe_root(t, 1)
    assert F4.to_vector(r) == [1, 1]
    assert F4.mul(r, r) == t


def test_vector_round_trip():
    for a in F9.elements():
        assert F9.from_vector(F9.to_vector(a)) == a


# -- orders -------------------------------------------------------------------

def test_order_format_round_trip():
    for x in (Fraction(3, 2), Fraction(4), Fraction(0), INF):
        assert parse_order(format_order(x)) == x
    assert format_order(Fraction(4)) == "4/1"
    assert format_order(INF) == "inf"


def test_infinity_compares_above_rationals():
    assert Fraction(10 ** 9) < INF and INF > 0 and min(INF, Fraction(1, 2)) == Fraction(1, 2)


# -- polynomials ----------------------------------------------------------------

def test_characteristic_two_frobenius_example():
    x, y = Poly.var(F2, 2, 0), Poly.var(F2, 2, 1)
    assert (x + y) ** 2 == x ** 2 + y ** 2


def test_hasse_example_over_f3():
    g = Poly.monomial(F3, 2, (4, 2))
    # C(4,1) C(2,1) = 8 = 2 mod 3
    assert g.hasse((1, 1)) == Poly.monomial(F3, 2, (3, 1), 2)


def test_arity_checks():
    with pytest.raises(ArityError):
        Poly(F2, 2, {(1,): 1})
    with pytest.raises(ArityError):
        Poly.var(F2, 1, 0) + Poly.var(F2, 2, 0)


def test_exact_division_raises_on_remainder():
    g = Poly(F2, 1, {(3,): 1, (1,): 1})
    assert g.div_var_power(0, 1) == Poly(F2, 1, {(2,): 1, (0,): 1})
    with pytest.raises(InexactDivision):
        g.div_var_power(0, 2)


def test_multi_indices_counts():
    assert len(list(multi_indices(2, 1, 3))) == 9
    assert all(1 <= sum(a) <= 3 for a in multi_indices(3, 1, 3))


@given(st.data())
def test_ring_laws(data):
    F = data.draw(fields)
    a, b, c = (data.draw(polys(F, 2)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == Poly.zero(F, 2)


@given(st.data())
def test_frobenius_is_additive(data):
    F = data.draw(fields)
    a, b = data.draw(polys(F, 2, max_deg=3)), data.draw(polys(F, 2, max_deg=3))
    assert (a + b) ** F.p == a ** F.p + b ** F.p


@given(st.data())
def test_order_is_a_valuation(data):
    F = data.draw(fields)
    a = data.draw(polys(F, 3, nonzero=True))
    b = data.draw(polys(F, 3, nonzero=True))
    S = data.draw(st.frozensets(st.integers(0, 2), min_size=1))
    assert (a * b).order_at(S) == a.order_at(S) + b.order_at(S)
    assert (a + b).order_at(S) >= min(a.order_at(S), b.order_at(S))
    assert (a * b).initial_form(S) == a.initial_form(S) * b.initial_form(S)


@given(st.data())
def test_hasse_composition(data):
    F = data.draw(fields)
    g = data.draw(polys(F, 2, max_deg=6))
    al = data.draw(st.tuples(st.integers(0, 3), st.integers(0, 3)))
    be = data.draw(st.tuples(st.integers(0, 3), st.integers(0, 3)))
    c = 1
    for x, y in zip(al, be):
        c *= comb(x + y, x)
    ab = tuple(x + y for x, y in zip(al, be))
    assert g.hasse(al).hasse(be) == g.hasse(ab).scale(c % F.p)


@given(st.data())
def test_hasse_taylor_expansion(data):
    # g(x + c) = sum_alpha (Delta^alpha g)(x) c^alpha
    F = data.draw(fields)
    g = data.draw(polys(F, 2, max_deg=4))
    c = data.draw(st.tuples(st.integers(0, F.q - 1), st.integers(0, F.q - 1)))
    acc = Poly.zero(F, 2)
    for alpha in itertools.product(range(5), repeat=2):
        coef = F.mul(F.pow(c[0], alpha[0]), F.pow(c[1], alpha[1]))
        acc = acc + g.hasse(alpha).scale(coef)
    assert acc == g.translate(c)


@given(st.data())
def test_pe_root_recheck(data):
    F = data.draw(fields)
    e = data.draw(st.integers(1, 2))
    h = data.draw(polys(F, 2, max_deg=3, nonzero=True))
    q = F.p ** e
    assert (h ** q).pe_root(e) == h
    g = data.draw(polys(F, 2, max_deg=6, nonzero=True))
    r = g.pe_root(e)
    if r is not None:
        assert r ** q == g
    else:
        assert any(x % q for ex in g.terms for x in ex)


@given(st.data())
def test_translate_round_trip(data):
    F = data.draw(fields)
    g = data.draw(polys(F, 2))
    c = data.draw(st.tuples(st.integers(0, F.q - 1), st.integers(0, F.q - 1)))
    back = tuple(F.neg(x) for x in c)
    assert g.translate(c).translate(back) == g


@given(st.data())
def test_blowup_substitution_is_a_ring_map(data):
    F = data.draw(fields)
    a, b = data.draw(polys(F, 3)), data.draw(polys(F, 3))
    center, i = (0, 1, 2), data.draw(st.integers(0, 2))
    assert (a * b).blowup_subst(center, i) == a.blowup_subst(center, i) * b.blowup_subst(center, i)


# -- z-polynomials and resultants -------------------------------------------------

@given(st.data())
def test_section_shift_round_trip(data):
    F = data.draw(fields)
    q = F.p ** data.draw(st.integers(1, 2 if F.p == 2 else 1))
    coeffs = [data.draw(polys(F, 2, max_terms=3, max_deg=3)) for _ in range(q)]
    alpha = data.draw(polys(F, 2, max_terms=2, max_deg=2))
    shifted = shift_z(coeffs, alpha)
    assert shift_z(shifted, -alpha) == coeffs
    # the constant term is f(alpha)
    f_alpha = alpha ** q
    for i, a in enumerate(coeffs, start=1):
        f_alpha = f_alpha + a * alpha ** (q - i)
    assert shifted[-1] == f_alpha


def test_shift_worked_examples():
    x, y = Poly.var(F2, 2, 0), Poly.var(F2, 2, 1)
    zero = Poly.zero(F2, 2)
    assert shift_z([x, y ** 3], y) == [x, y ** 2 + x * y + y ** 3]
    assert shift_z([zero, x ** 2 + x ** 3], x) == [zero, x ** 3]
    assert shift_z([x, y ** 3], zero) == [x, y ** 3]


def test_hasse_z_of_monic():
    y = Poly.var(F2, 1, 0)
    f = from_presentation([Poly.zero(F2, 1), y ** 3])
    assert hasse_z(f, 1) == [Poly.zero(F2, 1), Poly.zero(F2, 1)]


def test_resultant_small_example():
    y = Poly.var(F2, 1, 0)
    zero = Poly.zero(F2, 1)
    f = from_presentation([zero, y ** 3])      # z^2 + y^3
    g = [zero, Poly.const(F2, 1)]              # z
    assert resultant_norm(f, g) == y ** 3
    assert resultant_sylvester(f, g, 1) == y ** 3


def _leibniz(M):
    n = len(M)
    F = M[0][0].field
    acc = Poly.zero(F, M[0][0].nvars)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Poly.const(F, M[0][0].nvars, 1 if sign > 0 else F.neg(1))
        for i, j in enumerate(perm):
            term = term * M[i][j]
        acc = acc + term
    return acc


@given(st.data())
def test_determinant_matches_leibniz(data):
    F = data.draw(st.sampled_from((F2, F3, F4)))
    n = data.draw(st.integers(1, 4))
    M = [[data.draw(polys(F, 1, max_terms=2, max_deg=2)) for _ in range(n)] for _ in range(n)]
    assert det(M) == _leibniz(M)


@given(st.data())
def test_resultant_norm_equals_sylvester(data):
    F = data.draw(st.sampled_from((F2, F3, F4)))
    n = data.draw(st.integers(1, 4))
    k = data.draw(st.integers(0, 3))
    f = [data.draw(polys(F, 1, max_terms=2, max_deg=2)) for _ in range(n)] + [Poly.const(F, 1)]
    g = [data.draw(polys(F, 1, max_terms=2, max_deg=2)) for _ in range(k + 1)]
    assert resultant_z(f, g, k) == resultant_sylvester(f, g, k)


@given(st.data())
def test_resultant_against_split_roots(data):
    # f = prod (z - r_i)  =>  Res(f, g) = prod g(r_i)
    F = data.draw(st.sampled_from((F2, F3, F4)))
    roots = [data.draw(polys(F, 1, max_terms=2, max_deg=2)) for _ in range(data.draw(st.integers(1, 3)))]
    one, zero = Poly.const(F, 1), Poly.zero(F, 1)
    f = [one]
    for r in roots:
        # multiply by (z - r)
        nf = [zero] * (len(f) + 1)
        for k, c in enumerate(f):
            nf[k + 1] = nf[k + 1] + c
            nf[k] = nf[k] - c * r
        f = nf
    k = data.draw(st.integers(0, 3))
    g = [data.draw(polys(F, 1, max_terms=2, max_deg=2)) for _ in range(k + 1)]
    expected = one
    for r in roots:
        val = zero
        for c in reversed(g):
            val = val * r + c
        expected = expected * val
    assert resultant_z(f, g, k) == expected


@given(st.data())
def test_shift_preserves_resultant_with_derivative(data):
    # Res(f, f') is a discriminant-type invariant of z -> z + alpha
    F = data.draw(st.sampled_from((F2, F3)))
    q = F.p
    coeffs = [data.draw(polys(F, 1, max_terms=2, max_deg=3)) for _ in range(q)]
    assume(not coeffs[-1].is_zero())
    alpha = data.draw(polys(F, 1, max_terms=2, max_deg=2))
    f = from_presentation(coeffs)
    assert shift(f, alpha)[-1] == f[-1]
    g = from_presentation(shift_z(coeffs, alpha))
    assert resultant_z(f, hasse_z(f, 1), q - 1) == resultant_z(g, hasse_z(g, 1), q - 1)
