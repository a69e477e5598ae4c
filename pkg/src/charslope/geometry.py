"""Affine coordinate charts, coordinate points, divisor ledgers and blow-ups."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .algebra import Poly
from .errors import ArityError, PreconditionError


@dataclass(frozen=True)
class CoordPoint:
    """Generic point of V(x_i : i in vars).  The full index set is the origin."""
    vars: frozenset[int]
    translation: tuple[int, ...] | None = None

    def __init__(self, vars: Iterable[int], translation: Sequence[int] | None = None):
        object.__setattr__(self, "vars", frozenset(vars))
        object.__setattr__(self, "translation", tuple(translation) if translation else None)

    def issubset(self, other: "CoordPoint") -> bool:
        return self.vars <= other.vars

    def label(self, names: Sequence[str]) -> str:
        return "{" + ",".join(names[i] for i in sorted(self.vars)) + "}"

    def sort_key(self) -> tuple:
        return (-len(self.vars), tuple(sorted(self.vars)))


def origin(nvars: int) -> CoordPoint:
    return CoordPoint(range(nvars))


@dataclass(frozen=True)
class Center:
    include_z: bool
    vars: frozenset[int]

    def __init__(self, include_z: bool, vars: Iterable[int]):
        object.__setattr__(self, "include_z", bool(include_z))
        object.__setattr__(self, "vars", frozenset(vars))

    def label(self, names: Sequence[str], z_name: str = "z") -> str:
        gens = ([z_name] if self.include_z else []) + [names[i] for i in sorted(self.vars)]
        return "<" + ",".join(gens) + ">"


@dataclass(frozen=True)
class Divisor:
    id: str
    carrier: int | None  # chart variable index, None when not visible
    h: int               # exponent numerator over the ledger's s

    @property
    def visible(self) -> bool:
        return self.carrier is not None


@dataclass(frozen=True)
class DivisorLedger:
    """Divisors with exponents q_H = h/s, stored as integers (h, s)."""
    entries: tuple[Divisor, ...] = ()
    s: int = 1

    def __post_init__(self) -> None:
        if self.s < 1:
            raise PreconditionError("ledger scale s must be a positive integer")
        carriers = [d.carrier for d in self.entries if d.carrier is not None]
        if len(carriers) != len(set(carriers)):
            raise PreconditionError("two visible divisors share a carrier variable")
        ids = [d.id for d in self.entries]
        if len(ids) != len(set(ids)):
            raise PreconditionError("duplicate divisor id")
        if any(d.h < 0 for d in self.entries):
            raise PreconditionError("negative divisor exponent")

    def q(self, d: Divisor) -> Fraction:
        return Fraction(d.h, self.s)

    def visible(self) -> list[Divisor]:
        return [d for d in self.entries if d.carrier is not None]

    def by_carrier(self, i: int) -> Divisor | None:
        for d in self.entries:
            if d.carrier == i:
                return d
        return None

    def get(self, divisor_id: str) -> Divisor:
        for d in self.entries:
            if d.id == divisor_id:
                return d
        raise KeyError(divisor_id)

    def with_entry(self, d: Divisor) -> "DivisorLedger":
        kept = tuple(x for x in self.entries if x.id != d.id)
        return DivisorLedger(kept + (d,), self.s)

    def rescaled(self, new_s: int) -> "DivisorLedger":
        if new_s % self.s:
            raise PreconditionError("new scale must be a multiple of the old one")
        k = new_s // self.s
        return DivisorLedger(tuple(replace(d, h=d.h * k) for d in self.entries), new_s)

    def exponents(self) -> dict[str, int]:
        return {d.id: d.h for d in self.entries}


@dataclass(frozen=True)
class BlowupStep:
    center: Center
    chart_var: int
    parent_id: str


@dataclass(frozen=True)
class Chart:
    downstairs_vars: tuple[str, ...]
    z_name: str = "z"
    history: tuple[BlowupStep, ...] = ()
    id: str = "c0"
    ledger: DivisorLedger = field(default_factory=DivisorLedger)

    def __post_init__(self) -> None:
        if len(set(self.downstairs_vars)) != len(self.downstairs_vars):
            raise PreconditionError("variable names must be unique")
        if self.z_name in self.downstairs_vars:
            raise PreconditionError("z name clashes with a downstairs variable")
        for d in self.ledger.entries:
            if d.carrier is not None and not 0 <= d.carrier < self.nvars:
                raise PreconditionError(f"divisor {d.id} carried by a missing variable")

    @property
    def nvars(self) -> int:
        return len(self.downstairs_vars)

    def index(self, name: str) -> int:
        try:
            return self.downstairs_vars.index(name)
        except ValueError:
            raise KeyError(name) from None

    def with_ledger(self, ledger: DivisorLedger) -> "Chart":
        return replace(self, ledger=ledger)

    def origin(self) -> CoordPoint:
        return origin(self.nvars)

    def new_divisor_id(self) -> str:
        return f"E{len(self.history) + 1}"


def enumerate_coord_points(chart_or_n) -> list[CoordPoint]:
    """All nonempty coordinate subsets, largest first, then lexicographic."""
    n = chart_or_n if isinstance(chart_or_n, int) else chart_or_n.nvars
    out = []
    for k in range(n, 0, -1):
        for combo in combinations(range(n), k):
            out.append(CoordPoint(combo))
    return out


def translate_origin(chart: Chart, polys: Sequence[Poly], c: Sequence[int]) -> tuple[Chart, list[Poly]]:
    """Re-centre at the rational point c.  Divisors through the old origin
    that miss the new one become not visible."""
    if len(c) != chart.nvars:
        raise ArityError("translation vector length mismatch")
    for g in polys:
        if g.nvars != chart.nvars:
            raise ArityError("polynomial arity does not match the chart")
    F = polys[0].field if polys else None
    cc = [F.element(x) for x in c] if F else [int(x) for x in c]
    new_polys = [g.translate(cc) for g in polys]
    entries = tuple(
        replace(d, carrier=None) if d.carrier is not None and cc[d.carrier] else d
        for d in chart.ledger.entries
    )
    return chart.with_ledger(DivisorLedger(entries, chart.ledger.s)), new_polys


@dataclass(frozen=True)
class Substitution:
    """x_j -> x_i x_j for j in center.vars minus i; z -> x_i z when include_z."""
    center: Center
    chart_var: int

    def apply(self, g: Poly) -> Poly:
        return g.blowup_subst(self.center.vars, self.chart_var)


def blowup_substitution(chart: Chart, center: Center, chart_var: int,
                        new_exponent: int = 0) -> tuple[Chart, Substitution]:
    if not center.vars:
        raise PreconditionError("center has no downstairs variables")
    if chart_var not in center.vars:
        raise PreconditionError("chart variable is not in the center")
    if any(not 0 <= j < chart.nvars for j in center.vars):
        raise ArityError("center uses a variable outside the chart")
    step = BlowupStep(center, chart_var, chart.id)
    child_id = f"{chart.id}/{chart.downstairs_vars[chart_var]}"
    entries = []
    for d in chart.ledger.entries:
        if d.carrier == chart_var:
            entries.append(replace(d, carrier=None))
        else:
            entries.append(d)
    new_id = chart.new_divisor_id()
    entries.append(Divisor(new_id, chart_var, new_exponent))
    ledger = DivisorLedger(tuple(entries), chart.ledger.s)
    child = replace(chart, history=chart.history + (step,), id=child_id, ledger=ledger)
    return child, Substitution(center, chart_var)


@dataclass
class TreeNode:
    chart: Chart
    payload: object = None
    record: object = None
    children: list["TreeNode"] = field(default_factory=list)

    def walk(self):
        yield self
        for c in sorted(self.children, key=lambda n: n.chart.id):
            yield from c.walk()

    def leaves(self):
        return [n for n in self.walk() if not n.children]
