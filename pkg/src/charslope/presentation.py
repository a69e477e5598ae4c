"""p-presentations f = z^q + a_1 z^(q-1) + ... + a_q, q = p^e.

The elimination algebra is computed once, from resultants of f against its
Hasse derivatives in z, and afterwards carried along: it is unchanged by
section changes and transforms like any weighted algebra under blow-ups.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .algebra import INF, Poly, multi_indices, resultant_z, scale_section, shift_z
from .algebra.order import Order, is_integer
from .algebra.zpoly import from_presentation, hasse_z, is_zero
from .errors import ArityError, DegeneratePresentation, PreconditionError, TheoremViolation
from .geometry import Chart, CoordPoint, enumerate_coord_points
from .rees import WeightedAlgebra, hasse_saturate, rees_order_at


class AdaptationCase(str, Enum):
    A = "A"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    Z0_ord0 = "Z0_ord0"
    Z0_notpower = "Z0_notpower"
    Z0_power = "Z0_power"

    @property
    def cleanable(self) -> bool:
        return self in (AdaptationCase.B3, AdaptationCase.Z0_power)


def elimination_generators(coeffs: Sequence[Poly], e: int) -> WeightedAlgebra:
    F = coeffs[0].field
    q = F.p ** e
    if len(coeffs) != q:
        raise ArityError(f"expected {q} coefficients, got {len(coeffs)}")
    f = from_presentation(coeffs)
    gens: list[tuple[Poly, int]] = []
    inseparable = True
    for j in range(1, q):
        d = hasse_z(f, j)
        if is_zero(d):
            continue
        inseparable = False
        r = resultant_z(f, d, q - j)
        if r:
            gens.append((r, (q - j) * q))
    if inseparable:
        a = coeffs[-1]
        for alpha in multi_indices(a.nvars, 1, q - 1):
            d = a.hasse(alpha)
            if d:
                gens.append((d, q - sum(alpha)))
    return hasse_saturate(WeightedAlgebra.of(gens))


@dataclass(frozen=True)
class PPresentation:
    e: int
    coeffs: tuple[Poly, ...]
    chart: Chart
    elim: WeightedAlgebra

    @classmethod
    def build(cls, e: int, coeffs: Sequence[Poly], chart: Chart) -> "PPresentation":
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ArityError("no coefficients")
        if len(coeffs) != coeffs[0].field.p ** e:
            raise ArityError(f"expected p^e = {coeffs[0].field.p ** e} coefficients")
        for a in coeffs:
            if a.nvars != chart.nvars:
                raise ArityError("coefficient arity does not match the chart")
            a._check(coeffs[0])
        return cls(e, coeffs, chart, elimination_generators(coeffs, e))

    @property
    def field(self):
        return self.coeffs[0].field

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return len(self.coeffs)

    @property
    def nvars(self) -> int:
        return self.chart.nvars

    def a(self, i: int) -> Poly:
        return self.coeffs[i - 1]

    @property
    def a_top(self) -> Poly:
        return self.coeffs[-1]

    def with_coeffs(self, coeffs: Sequence[Poly]) -> "PPresentation":
        # elim is invariant under section changes; see module docstring
        return replace(self, coeffs=tuple(coeffs))

    def origin(self) -> CoordPoint:
        return self.chart.origin()

    def format_f(self) -> str:
        names = self.chart.downstairs_vars
        z = self.chart.z_name
        parts = [f"{z}^{self.q}"]
        for i, a in enumerate(self.coeffs, start=1):
            if a:
                k = self.q - i
                zt = "" if k == 0 else (z if k == 1 else f"{z}^{k}")
                body = a.format(names)
                if zt:
                    body = f"({body})*{zt}" if len(a) > 1 else (zt if body == "1" else f"{body}*{zt}")
                parts.append(body)
        return " + ".join(parts)


def a_term(pres: PPresentation, pt) -> Order:
    v = pres.a_top.order_at(pt)
    return INF if v is INF else Fraction(v, pres.q)


def elim_order(pres: PPresentation, pt) -> Order:
    return rees_order_at(pres.elim, pt)


def slope_at(pres: PPresentation, pt) -> Order:
    return min(a_term(pres, pt), elim_order(pres, pt))


def full_min_slope(pres: PPresentation, pt) -> Order:
    """min over all j of nu(a_j)/j together with the elimination order."""
    best = elim_order(pres, pt)
    for j, a in enumerate(pres.coeffs, start=1):
        v = a.order_at(pt)
        if v is not INF and Fraction(v, j) < best:
            best = Fraction(v, j)
    return best


def adaptation_case(pres: PPresentation, pt) -> AdaptationCase:
    at = a_term(pres, pt)
    eo = elim_order(pres, pt)
    if at is INF and eo is INF:
        raise DegeneratePresentation("a_{p^e} = 0 and the elimination algebra is zero")
    if eo == 0:
        return AdaptationCase.Z0_ord0
    if at == 0:
        residue = pres.a_top.initial_form(pt)
        if residue.pe_root(pres.e) is None:
            return AdaptationCase.Z0_notpower
        return AdaptationCase.Z0_power
    if eo <= at:
        return AdaptationCase.A
    if not is_integer(at):
        return AdaptationCase.B1
    if pres.a_top.initial_form(pt).pe_root(pres.e) is None:
        return AdaptationCase.B2
    return AdaptationCase.B3


def is_well_adapted(pres: PPresentation, pt) -> bool:
    return not adaptation_case(pres, pt).cleanable


@dataclass(frozen=True)
class CleanStep:
    case: AdaptationCase
    slope_before: Order
    alpha: Poly
    slope_after: Order


def cleaning_alpha(pres: PPresentation, pt) -> Poly:
    """alpha with alpha^q = -In(a_q), so that In(a_q) cancels after the shift."""
    root = (-pres.a_top.initial_form(pt)).pe_root(pres.e)
    if root is None:
        raise PreconditionError("initial form is not a p^e-th power")
    return root


def clean_at(pres: PPresentation, pt, max_passes: int = 10_000) -> tuple[PPresentation, list[CleanStep]]:
    if getattr(pt, "translation", None):
        raise PreconditionError("clean at a translated point: translate the presentation first")
    log: list[CleanStep] = []
    if pres.a_top.is_zero():
        raise DegeneratePresentation("a_{p^e} is zero")
    case = adaptation_case(pres, pt)
    while case.cleanable:
        if len(log) >= max_passes:
            raise TheoremViolation("cleaning did not terminate")
        before = slope_at(pres, pt)
        alpha = cleaning_alpha(pres, pt)
        pres = pres.with_coeffs(shift_z(pres.coeffs, alpha))
        if pres.a_top.is_zero():
            raise DegeneratePresentation(
                "cleaning drove a_{p^e} to zero: f is a p^e-th power and Sing has codimension one")
        after = slope_at(pres, pt)
        if not after > before:
            raise TheoremViolation(f"cleaning pass did not raise the slope ({before} -> {after})")
        log.append(CleanStep(case, before, alpha, after))
        case = adaptation_case(pres, pt)
    return pres, log


def clean_simultaneous(pres: PPresentation, x_pt, y_pt, max_rounds: int = 64) -> PPresentation:
    """Well-adapted at both y_pt and the closed-er point x_pt (y.vars within x.vars)."""
    if not frozenset(y_pt.vars) <= frozenset(x_pt.vars):
        raise PreconditionError("x_pt is not in the closure of y_pt")
    for _ in range(max_rounds):
        pres, _ = clean_at(pres, y_pt)
        pres, _ = clean_at(pres, x_pt)
        if is_well_adapted(pres, y_pt):
            return pres
    raise TheoremViolation("simultaneous adaptation did not stabilise")


def v_ord(pres: PPresentation, pt) -> Fraction:
    cleaned, _ = clean_at(pres, pt)
    sl = slope_at(cleaned, pt)
    if sl < 1:
        raise PreconditionError(f"point is not singular (slope {sl} after cleaning)")
    return sl


def is_singular_at(pres: PPresentation, pt) -> bool:
    cleaned, _ = clean_at(pres, pt)
    return slope_at(cleaned, pt) >= 1


def check_codim_one(pres: PPresentation) -> None:
    """Reject presentations whose Sing contains a hypersurface."""
    generic = CoordPoint(())
    cleaned, _ = clean_at(pres, generic)
    if slope_at(cleaned, generic) >= 1:
        raise DegeneratePresentation("Sing has a codimension-one component")


@dataclass(frozen=True)
class SingLocus:
    singular: tuple[CoordPoint, ...]
    maximal: tuple[CoordPoint, ...]
    origin_singular: bool

    @property
    def empty(self) -> bool:
        return not self.singular


def sing_locus(pres: PPresentation) -> SingLocus:
    check_codim_one(pres)
    sing = [pt for pt in enumerate_coord_points(pres.nvars) if is_singular_at(pres, pt)]
    maximal = [pt for pt in sing if not any(o.vars < pt.vars for o in sing)]
    maximal.sort(key=lambda pt: (len(pt.vars), sorted(pt.vars)))
    org = pres.origin()
    return SingLocus(tuple(sing), tuple(maximal), any(pt.vars == org.vars for pt in sing))


def change_section(pres: PPresentation, u: int, alpha: Poly) -> PPresentation:
    """Coefficients for the section u z + alpha."""
    if pres.field.element(u) == 0:
        raise PreconditionError("u must be a unit")
    return pres.with_coeffs(shift_z(scale_section(pres.coeffs, u), alpha))


def in_f_is_pure(pres: PPresentation, pt) -> bool:
    """nu(a_j) > j for every j: the tangent cone of f is Z^q."""
    if not is_well_adapted(pres, pt):
        raise PreconditionError("presentation is not well-adapted at the point")
    return all(a.order_at(pt) > j for j, a in enumerate(pres.coeffs, start=1))


def translate_presentation(pres: PPresentation, c: Sequence[int]) -> PPresentation:
    from .geometry import translate_origin
    chart, polys = translate_origin(pres.chart, list(pres.coeffs), c)
    elim_polys = [g for g, _ in pres.elim.gens]
    _, moved = translate_origin(pres.chart, elim_polys, c) if elim_polys else (None, [])
    elim = WeightedAlgebra.of(zip(moved, (n for _, n in pres.elim.gens)))
    return PPresentation(pres.e, tuple(polys), chart, elim)


@dataclass(frozen=True)
class PointRow:
    point: CoordPoint
    slope: Order
    case: AdaptationCase
    v_ord: Order | None
    singular: bool
    passes: int


def point_table(pres: PPresentation, points=None) -> list[PointRow]:
    rows = []
    for pt in points or enumerate_coord_points(pres.nvars):
        raw = slope_at(pres, pt)
        case = adaptation_case(pres, pt)
        cleaned, log = clean_at(pres, pt)
        sl = slope_at(cleaned, pt)
        rows.append(PointRow(pt, raw, case, sl if sl >= 1 else None, sl >= 1, len(log)))
    return rows
