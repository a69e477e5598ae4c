"""Blow-ups of p-presentations, monomial contact, the strong monomial case and
the lifted resolution driver."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import (GridError, ImpermissibleCenter, OutOfScope, PreconditionError,
                     TheoremViolation)
from .geometry import Center, Chart, CoordPoint, DivisorLedger, TreeNode, blowup_substitution
from .presentation import (PPresentation, adaptation_case, clean_at, clean_simultaneous,
                           elim_order, in_f_is_pure, is_well_adapted, sing_locus, slope_at)
from .rees import (MonomialAlgebra, membership_failures, monomial_order_at, next_monomial_center,
                   transform_monomial, transform_weighted)


@dataclass(frozen=True)
class TransformRecord:
    center: Center
    parent_id: str
    child_ids: tuple[str, ...]
    slope_at_center: Fraction
    new_divisor_exponent: Fraction  # q_H
    s: int

    @property
    def h(self) -> int:
        return int(self.new_divisor_exponent * self.s)


@dataclass(frozen=True)
class Blowup:
    parent: PPresentation            # the bi-adapted presentation that was blown up
    record: TransformRecord
    children: tuple[tuple[Chart, PPresentation], ...]

    def __iter__(self):
        for chart, pres in self.children:
            yield chart, pres, self.record


def _grid(ledger: DivisorLedger, qh: Fraction, regrid: bool) -> DivisorLedger:
    if (qh * ledger.s).denominator == 1:
        return ledger
    if not regrid:
        raise GridError(f"tight exponent {qh} is not on the 1/{ledger.s} grid")
    return ledger.rescaled(lcm(ledger.s, qh.denominator))


def blowup_presentation(pres: PPresentation, center: Center, *, regrid: bool = False,
                        preclean: bool = True) -> Blowup:
    """Blow up <z, x_S> in every chart U_{x_i}, i in S.

    With preclean=False the presentation is used as given; this only exists
    as a negative control for the adaptation check.
    """
    if not center.include_z:
        raise ImpermissibleCenter("the center must contain z")
    if not center.vars:
        raise ImpermissibleCenter("the center needs at least one downstairs variable")
    xi_c = CoordPoint(center.vars)
    if preclean:
        pres = clean_simultaneous(pres, pres.origin(), xi_c)
    sl = slope_at(pres, xi_c)
    if sl < 1:
        raise ImpermissibleCenter(f"slope {sl} < 1 at the generic point of the center")
    qh = Fraction(sl) - 1
    ledger = _grid(pres.chart.ledger, qh, regrid)
    chart = pres.chart.with_ledger(ledger)
    h = int(qh * ledger.s)
    children = []
    for i in sorted(center.vars):
        child_chart, sub = blowup_substitution(chart, center, i, new_exponent=h)
        coeffs = tuple(sub.apply(a).div_var_power(i, n)
                       for n, a in enumerate(pres.coeffs, start=1))
        elim = transform_weighted(pres.elim, center.vars, i)
        children.append((child_chart, PPresentation(pres.e, coeffs, child_chart, elim)))
    record = TransformRecord(center, pres.chart.id, tuple(c.id for c, _ in children),
                             Fraction(sl), qh, ledger.s)
    return Blowup(pres, record, tuple(children))


def well_adapted_after_transform_check(child: PPresentation, divisor_var: int,
                                       parent_slope: Fraction) -> bool:
    pt = CoordPoint([divisor_var])
    if adaptation_case(child, pt).cleanable:
        return False
    return slope_at(child, pt) == parent_slope - 1


@dataclass(frozen=True)
class ContactItem:
    label: str
    ok: bool
    failing: tuple[str, ...] = ()


@dataclass(frozen=True)
class ContactReport:
    items: tuple[ContactItem, ...]

    @property
    def ok(self) -> bool:
        return all(it.ok for it in self.items)


def monomial_contact_check(pres: PPresentation, M: MonomialAlgebra | None = None) -> ContactReport:
    M = pres.chart.ledger if M is None else M
    items = []
    for i, a in enumerate(pres.coeffs, start=1):
        if a.is_zero():
            items.append(ContactItem(f"a_{i}", True))
            continue
        bad = membership_failures(a, i, M)
        items.append(ContactItem(f"a_{i}", not bad, tuple(bad)))
    for k, (g, n) in enumerate(pres.elim.gens):
        bad = membership_failures(g, n, M)
        items.append(ContactItem(f"elim[{k}] (weight {n})", not bad, tuple(bad)))
    return ContactReport(tuple(items))


class SMCKind(str, Enum):
    NotSMC = "NotSMC"
    SMC_via_elimination = "SMC_via_elimination"
    SMC_via_coefficient = "SMC_via_coefficient"


@dataclass(frozen=True)
class SMCVerdict:
    kind: SMCKind
    v_ord: Fraction
    monomial_order: Fraction
    witness: dict = field(default_factory=dict)

    @property
    def is_smc(self) -> bool:
        return self.kind is not SMCKind.NotSMC


def strong_monomial_test(pres: PPresentation, M: MonomialAlgebra | None, pt) -> SMCVerdict:
    M = pres.chart.ledger if M is None else M
    if not is_well_adapted(pres, pt):
        raise PreconditionError("presentation is not well-adapted at the point")
    sl = slope_at(pres, pt)
    if sl < 1:
        raise PreconditionError("point is not singular")
    om = monomial_order_at(M, pt)
    names = pres.chart.downstairs_vars
    if sl > om:
        return SMCVerdict(SMCKind.NotSMC, sl, om)
    if sl < om:
        if monomial_contact_check(pres, M).ok:
            raise TheoremViolation(f"v_ord {sl} below the monomial order {om} despite contact")
        raise PreconditionError("declared monomial algebra has no contact with the presentation")
    through = [d for d in M.visible() if d.carrier in pt.vars]
    s, q = M.s, pres.q

    if elim_order(pres, pt) == sl and pres.elim.gens:
        exps = {d.id: min(Fraction(s * g.var_order(d.carrier), n) for g, n in pres.elim.gens)
                for d in through}
        if all(exps[d.id] == d.h for d in through):
            return SMCVerdict(SMCKind.SMC_via_elimination, sl, om,
                              {"divisor_exponents": {names[d.carrier]: exps[d.id] for d in through}})

    a = pres.a_top
    m = {d.id: a.var_order(d.carrier) for d in through}
    unit = a
    for d in through:
        unit = unit.div_var_power(d.carrier, m[d.id])
    if unit.order_at(pt) == 0 and all(s * m[d.id] == q * d.h for d in through):
        return SMCVerdict(SMCKind.SMC_via_coefficient, sl, om,
                          {"monomial": {names[d.carrier]: m[d.id] for d in through},
                           "unit": unit.format(names)})
    raise TheoremViolation("v_ord equals the monomial order but neither characterisation applies")


# -- lifted resolution ---------------------------------------------------------

@dataclass
class LiftStep:
    chart_id: str
    center: Center
    record: TransformRecord
    verdicts: dict[str, SMCKind | None]
    contact_ok: dict[str, bool]


@dataclass
class LiftedResolution:
    root: TreeNode
    steps: list[LiftStep]
    start_verdict: SMCVerdict | None

    def centers(self) -> list[tuple[str, Center]]:
        return [(st.chart_id, st.center) for st in self.steps]

    def leaves(self) -> list[TreeNode]:
        return self.root.leaves()


def _assert_sing_on_section(pres: PPresentation) -> None:
    """Every singular coordinate point must lie on z = 0 for this section."""
    locus = sing_locus(pres)
    for pt in locus.singular:
        if not slope_at(pres, pt) > 0:
            raise TheoremViolation(f"singular point {sorted(pt.vars)} is off the section z = 0")


def _origin_verdict(pres: PPresentation) -> SMCVerdict | None:
    org = pres.origin()
    cleaned, _ = clean_at(pres, org)
    if slope_at(cleaned, org) < 1:
        return None
    return strong_monomial_test(cleaned, None, org)


def lift_and_resolve(pres: PPresentation) -> LiftedResolution:
    """Lift the monomial resolution of the chart's ledger to blow-ups <z, x_S>."""
    root = TreeNode(pres.chart, pres)
    locus = sing_locus(pres)
    if locus.empty:
        return LiftedResolution(root, [], None)
    if not locus.origin_singular:
        raise TheoremViolation("singular coordinate points but the origin is regular")
    org = pres.origin()
    cleaned, _ = clean_at(pres, org)
    if not monomial_contact_check(cleaned).ok:
        raise PreconditionError("the declared monomial algebra has no contact with the presentation")
    verdict = strong_monomial_test(cleaned, None, org)
    if not verdict.is_smc:
        raise OutOfScope(f"not in the strong monomial case: v_ord {verdict.v_ord} > "
                         f"ord M {verdict.monomial_order}")
    if not in_f_is_pure(cleaned, org):
        raise OutOfScope("tau >= 2 regime: the tangent cone of f is not Z^q; out of scope")

    steps: list[LiftStep] = []
    stack = [root]
    while stack:
        node = stack.pop()
        cur: PPresentation = node.payload
        T = next_monomial_center(cur.chart.ledger)
        if T is None:
            if not sing_locus(cur).empty:
                raise TheoremViolation(f"chart {cur.chart.id} still singular after resolution")
            continue
        center = Center(True, T)
        bi = clean_simultaneous(cur, cur.origin(), CoordPoint(T))
        _assert_sing_on_section(bi)
        blow = blowup_presentation(bi, center)
        node.record = blow.record
        verdicts: dict[str, SMCKind | None] = {}
        contact: dict[str, bool] = {}
        old = cur.chart.ledger
        for chart, child in blow.children:
            expected = transform_monomial(old, T, chart.history[-1].chart_var,
                                          chart.ledger.entries[-1].id)
            if expected != chart.ledger:
                raise TheoremViolation(
                    f"tight exponent {blow.record.new_divisor_exponent} disagrees with the "
                    f"monomial transform in chart {chart.id}")
            contact[chart.id] = monomial_contact_check(child).ok
            if not contact[chart.id]:
                raise TheoremViolation(f"monomial contact lost in chart {chart.id}")
            v = _origin_verdict(child)
            verdicts[chart.id] = v.kind if v else None
            if v is not None and not v.is_smc:
                raise TheoremViolation(f"strong monomial case lost in chart {chart.id}")
            node.children.append(TreeNode(chart, child))
        steps.append(LiftStep(cur.chart.id, center, blow.record, verdicts, contact))
        stack.extend(reversed(node.children))
    return LiftedResolution(root, steps, verdict)
