"""Randomised theorem-verification suites.

Each suite is deterministic in its seed: instance k draws from a private
random.Random keyed by (suite, seed, k).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .algebra import INF, FieldSpec, Poly
from .errors import CharslopeError, DegeneratePresentation
from .geometry import Center, Chart, CoordPoint, Divisor, DivisorLedger, enumerate_coord_points
from .presentation import (AdaptationCase, PPresentation, a_term, adaptation_case, change_section,
                           clean_at, clean_simultaneous, elim_order, is_singular_at, sing_locus,
                           slope_at, v_ord)
from .rees import depth_bound, resolve_monomial
from .transform import (blowup_presentation, lift_and_resolve, monomial_contact_check,
                        well_adapted_after_transform_check)

DEFAULT_PAIRS = ((2, 1), (2, 2), (3, 1))
VAR_NAMES = ("x", "y", "w", "v", "u", "t")


@dataclass
class SuiteReport:
    name: str
    seed: int
    count: int
    passed: int = 0
    failed: int = 0
    out_of_regime: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def fail(self, detail: dict) -> None:
        self.failed += 1
        if len(self.failures) < 20:
            self.failures.append(detail)


def _rng(name: str, seed: int, k: int) -> random.Random:
    return random.Random(f"{name}:{seed}:{k}")


def _field(p: int) -> FieldSpec:
    return FieldSpec(p)


def random_poly(rng: random.Random, F: FieldSpec, n: int, S: frozenset[int], min_s_deg: int,
                terms: int, extra: int = 2, other: int = 2) -> Poly:
    """Random polynomial whose monomials have S-degree in [min_s_deg, min_s_deg+extra]."""
    out: dict[tuple[int, ...], int] = {}
    Sl = sorted(S)
    for _ in range(terms):
        target = min_s_deg + rng.randint(0, extra)
        e = [0] * n
        if Sl:
            for _ in range(target):
                e[rng.choice(Sl)] += 1
        for i in range(n):
            if i not in S:
                e[i] = rng.randint(0, other)
        out[tuple(e)] = rng.randint(1, F.p - 1)
    return Poly(F, n, out)


def random_presentation(rng: random.Random, p: int, e: int, n: int, S: frozenset[int],
                        shift: int = 0) -> PPresentation:
    """a_i with S-order >= i (+ shift), a_q nonzero, not rejected by cleaning."""
    F = _field(p)
    q = p ** e
    while True:
        coeffs = []
        for i in range(1, q + 1):
            nterms = rng.randint(1, 3) if i == q else rng.choice((0, 0, 1, 2))
            coeffs.append(random_poly(rng, F, n, S, i + shift, nterms))
        if coeffs[-1].is_zero():
            continue
        pres = PPresentation.build(e, coeffs, Chart(VAR_NAMES[:n]))
        try:
            sing_locus(pres)
        except DegeneratePresentation:
            continue
        return pres


def _nvars(rng: random.Random, q: int) -> int:
    return rng.randint(1, 2) if q >= 4 else rng.randint(1, 3)


def _random_subset(rng: random.Random, n: int) -> frozenset[int]:
    k = rng.randint(1, n)
    return frozenset(rng.sample(range(n), k))


def _describe(pres: PPresentation) -> str:
    return pres.format_f()


# -- suites ----------------------------------------------------------------------

def suite_slope_drop(seed: int, count: int, pairs=DEFAULT_PAIRS) -> SuiteReport:
    rep = SuiteReport("slope-drop", seed, count * len(pairs))
    for p, e in pairs:
        k = 0
        done = 0
        while done < count:
            rng = _rng(f"slope-drop/{p},{e}", seed, k)
            k += 1
            n = _nvars(rng, p ** e)
            S = _random_subset(rng, n)
            pres = random_presentation(rng, p, e, n, S)
            try:
                bi = clean_simultaneous(pres, pres.origin(), CoordPoint(S))
            except DegeneratePresentation:
                rep.out_of_regime += 1
                continue
            blow = blowup_presentation(bi, Center(True, S), regrid=True)
            sl = blow.record.slope_at_center
            ok = all(well_adapted_after_transform_check(child, chart.history[-1].chart_var, sl)
                     for chart, child in blow.children)
            done += 1
            if ok:
                rep.passed += 1
            else:
                rep.fail({"p": p, "e": e, "f": _describe(bi), "center": sorted(S),
                          "slope": str(sl)})
    return rep


def suite_section_invariance(seed: int, count: int, pairs=DEFAULT_PAIRS) -> SuiteReport:
    rep = SuiteReport("section-invariance", seed, count * len(pairs))
    for p, e in pairs:
        F = _field(p)
        k = 0
        done = 0
        while done < count:
            rng = _rng(f"section-invariance/{p},{e}", seed, k)
            k += 1
            n = _nvars(rng, p ** e)
            pres = random_presentation(rng, p, e, n, frozenset(range(n)))
            org = pres.origin()
            try:
                before = v_ord(pres, org)
            except DegeneratePresentation:
                rep.out_of_regime += 1
                continue
            u = rng.randint(1, p - 1)
            alpha = random_poly(rng, F, n, frozenset(range(n)), 1, rng.randint(0, 3), extra=2, other=0)
            moved = change_section(pres, u, alpha)
            done += 1
            try:
                after = v_ord(moved, org)
            except CharslopeError as exc:
                rep.fail({"p": p, "e": e, "f": _describe(pres), "u": u,
                          "alpha": alpha.format(pres.chart.downstairs_vars), "error": str(exc)})
                continue
            if before == after:
                rep.passed += 1
            else:
                rep.fail({"p": p, "e": e, "f": _describe(pres), "u": u,
                          "alpha": alpha.format(pres.chart.downstairs_vars),
                          "before": str(before), "after": str(after)})
    return rep


def suite_monotonicity(seed: int, count: int, pairs=DEFAULT_PAIRS) -> SuiteReport:
    rep = SuiteReport("monotonicity", seed, count * len(pairs))
    for p, e in pairs:
        k = 0
        done = 0
        while done < count:
            rng = _rng(f"monotonicity/{p},{e}", seed, k)
            k += 1
            n = _nvars(rng, p ** e)
            S = _random_subset(rng, n)
            pres = random_presentation(rng, p, e, n, S, shift=rng.choice((-1, 0, 0, 1)))
            points = enumerate_coord_points(n)
            try:
                cleaned = {pt: slope_at(clean_at(pres, pt)[0], pt) for pt in points}
            except DegeneratePresentation:
                rep.out_of_regime += 1
                continue
            done += 1
            bad = []
            for x in points:
                for y in points:
                    if y.vars < x.vars:
                        if not slope_at(pres, y) <= slope_at(pres, x):
                            bad.append(("slope", sorted(y.vars), sorted(x.vars)))
                        if cleaned[x] >= 1 and cleaned[y] >= 1 and not cleaned[x] >= cleaned[y]:
                            bad.append(("v_ord", sorted(y.vars), sorted(x.vars)))
            if bad:
                rep.fail({"p": p, "e": e, "f": _describe(pres), "violations": bad})
            else:
                rep.passed += 1
    return rep


def cleaning_chain(p: int, e: int, k: int) -> PPresentation:
    """a_q = x^q + x^(2q) + ... + x^(kq) + x^(kq+1) in one variable."""
    F = _field(p)
    q = p ** e
    terms = {(i * q,): 1 for i in range(1, k + 1)}
    terms[(k * q + 1,)] = 1
    coeffs = [Poly.zero(F, 1)] * (q - 1) + [Poly(F, 1, terms)]
    return PPresentation.build(e, coeffs, Chart(("x",)))


def suite_cleaning_termination(seed: int, count: int, pairs=DEFAULT_PAIRS, kmax: int = 8) -> SuiteReport:
    rep = SuiteReport("cleaning-termination", seed, len(pairs) * kmax)
    for p, e in pairs:
        for k in range(1, kmax + 1):
            pres = cleaning_chain(p, e, k)
            org = pres.origin()
            out, log = clean_at(pres, org)
            slopes = [st.slope_before for st in log] + [slope_at(out, org)]
            increasing = all(a < b for a, b in zip(slopes, slopes[1:]))
            final = adaptation_case(out, org)
            if len(log) == k and increasing and final in (AdaptationCase.B1, AdaptationCase.B2):
                rep.passed += 1
            else:
                rep.fail({"p": p, "e": e, "k": k, "passes": len(log),
                          "slopes": [str(s) for s in slopes], "final": final.value})
    return rep


def smc_family(rng: random.Random, p: int, e: int) -> PPresentation:
    """Curated strong-monomial inputs: z^q + x^m (times a unit), or a mixed
    z^2 + x^a z + (high order) whose elimination algebra is monomial."""
    F = _field(p)
    q = p ** e
    n = rng.randint(1, 3)
    names = VAR_NAMES[:n]
    kind = rng.choice(("coefficient", "coefficient", "elimination")) if q == 2 else "coefficient"
    if kind == "coefficient":
        while True:
            m = [rng.randint(0, 3 * q) for _ in range(n)]
            if sum(m) > q and any(x % q for x in m):
                break
        unit = {(0,) * n: 1}
        if rng.random() < 0.5:
            unit[tuple(x + 1 for x in m)] = rng.randint(1, p - 1)
        top = Poly(F, n, {tuple(x + y for x, y in zip(m, ex)): c for ex, c in unit.items()})
        coeffs = [Poly.zero(F, n)] * (q - 1) + [top]
        ledger = DivisorLedger(tuple(Divisor(names[i], i, m[i]) for i in range(n)), q)
        pres = PPresentation.build(e, coeffs, Chart(names, ledger=ledger))
        if not monomial_contact_check(pres).ok:
            return smc_family(rng, p, e)
        return pres
    else:
        while True:
            m = [rng.randint(0, 4) for _ in range(n)]
            if sum(m) >= 2:
                break
        a1 = Poly.monomial(F, n, m)
        a2 = Poly.monomial(F, n, [2 * x + 1 for x in m])
        coeffs = [a1, a2]
        ledger = DivisorLedger(tuple(Divisor(names[i], i, 2 * m[i]) for i in range(n)), 2)
    return PPresentation.build(e, coeffs, Chart(names, ledger=ledger))


def suite_smc_stability(seed: int, count: int, pairs=DEFAULT_PAIRS) -> SuiteReport:
    rep = SuiteReport("smc-stability", seed, count * len(pairs))
    for p, e in pairs:
        for k in range(count):
            rng = _rng(f"smc-stability/{p},{e}", seed, k)
            pres = smc_family(rng, p, e)
            try:
                res = lift_and_resolve(pres)
            except CharslopeError as exc:
                rep.fail({"p": p, "e": e, "f": _describe(pres),
                          "ledger": pres.chart.ledger.exponents(), "error": f"{type(exc).__name__}: {exc}"})
                continue
            rep.passed += 1
    return rep


def suite_contact(seed: int, count: int, pairs=DEFAULT_PAIRS, depth: int = 3) -> SuiteReport:
    rep = SuiteReport("contact", seed, count * len(pairs) + 1)
    # the flagship four-step run first
    from .examples import flagship_e5
    try:
        res = lift_and_resolve(flagship_e5())
        if all(all(st.contact_ok.values()) for st in res.steps):
            rep.passed += 1
        else:
            rep.fail({"instance": "E5"})
    except CharslopeError as exc:
        rep.fail({"instance": "E5", "error": str(exc)})
    for p, e in pairs:
        q = p ** e
        for k in range(count):
            rng = _rng(f"contact/{p},{e}", seed, k)
            n = _nvars(rng, q)
            pres = random_presentation(rng, p, e, n, frozenset(range(n)))
            pres = PPresentation(pres.e, pres.coeffs, pres.chart.with_ledger(DivisorLedger((), q)),
                                 pres.elim)
            ok, detail = True, {}
            try:
                for step in range(depth):
                    sing = [pt for pt in enumerate_coord_points(pres.nvars) if is_singular_at(pres, pt)]
                    if not sing:
                        break
                    S = rng.choice(sing).vars
                    blow = blowup_presentation(pres, Center(True, S), regrid=True)
                    children = list(blow.children)
                    for chart, child in children:
                        if not monomial_contact_check(child).ok:
                            ok, detail = False, {"step": step, "chart": chart.id,
                                                 "f": _describe(child)}
                            break
                    if not ok:
                        break
                    pres = rng.choice(children)[1]
            except DegeneratePresentation as exc:
                rep.out_of_regime += 1
                rep.notes.append(f"{p},{e}#{k}: rejected after a blow-up ({exc}); "
                                 "contact held up to that step")
                continue
            if ok:
                rep.passed += 1
            else:
                detail.update({"p": p, "e": e, "k": k})
                rep.fail(detail)
    return rep


def restriction_instance(rng: random.Random, p: int, e: int) -> tuple[PPresentation, int]:
    """Some intermediate a_j gets a strictly smaller normalised order than a_q."""
    F = _field(p)
    q = p ** e
    n = _nvars(rng, q)
    allv = frozenset(range(n))
    j0 = rng.randint(1, q - 1)
    coeffs = []
    for i in range(1, q + 1):
        if i == j0:
            coeffs.append(random_poly(rng, F, n, allv, i + rng.randint(0, 1), rng.randint(1, 2), extra=1))
        elif i == q:
            coeffs.append(random_poly(rng, F, n, allv, q + 2 * q, rng.randint(1, 2)))
        else:
            coeffs.append(random_poly(rng, F, n, allv, 2 * i + 1, rng.choice((0, 1))))
    return PPresentation.build(e, coeffs, Chart(VAR_NAMES[:n])), j0


def suite_restriction(seed: int, count: int, pairs=DEFAULT_PAIRS) -> SuiteReport:
    rep = SuiteReport("restriction", seed, count * len(pairs))
    for p, e in pairs:
        k = 0
        done = 0
        while done < count:
            rng = _rng(f"restriction/{p},{e}", seed, k)
            k += 1
            pres, _ = restriction_instance(rng, p, e)
            for pt in enumerate_coord_points(pres.nvars):
                inter = min((Fraction(a.order_at(pt), j) for j, a in enumerate(pres.coeffs[:-1], 1)
                             if a), default=INF)
                if not inter < a_term(pres, pt):
                    continue
                done += 1
                if pres.elim.is_empty():
                    rep.out_of_regime += 1
                    rep.notes.append(f"{p},{e}#{k}: empty elimination algebra, not counted")
                    break
                if elim_order(pres, pt) <= inter:
                    rep.passed += 1
                else:
                    rep.fail({"p": p, "e": e, "f": _describe(pres), "point": sorted(pt.vars),
                              "elim_order": str(elim_order(pres, pt)), "min": str(inter)})
                break
    return rep


def random_ledger(rng: random.Random) -> tuple[DivisorLedger, int]:
    r = rng.randint(1, 4)
    n = r + rng.randint(0, 1)
    s = rng.randint(1, 6)
    carriers = rng.sample(range(n), r)
    entries = tuple(Divisor(f"H{i + 1}", c, rng.randint(0, 20)) for i, c in enumerate(carriers))
    return DivisorLedger(entries, s), n


def suite_monomial_resolution(seed: int, count: int) -> SuiteReport:
    rep = SuiteReport("monomial-resolution-termination", seed, count)
    for k in range(count):
        rng = _rng("monomial-resolution-termination", seed, k)
        M, n = random_ledger(rng)
        try:
            res = resolve_monomial(M, Chart(VAR_NAMES[:n]))
        except CharslopeError as exc:
            rep.fail({"ledger": M.exponents(), "s": M.s, "error": str(exc)})
            continue
        top = res.max_final_order()
        if top < 1 and res.depth() <= depth_bound(M):
            rep.passed += 1
        else:
            rep.fail({"ledger": M.exponents(), "s": M.s, "final_max": str(top),
                      "depth": res.depth(), "bound": depth_bound(M)})
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "slope-drop": suite_slope_drop,
    "section-invariance": suite_section_invariance,
    "contact": suite_contact,
    "monotonicity": suite_monotonicity,
    "cleaning-termination": suite_cleaning_termination,
    "smc-stability": suite_smc_stability,
    "monomial-resolution-termination": suite_monomial_resolution,
    "restriction": suite_restriction,
}


def verify_suite(name: str, seed: int = 0, count: int = 100) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    return fn(seed, count)
