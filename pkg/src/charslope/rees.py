"""Weighted generator algebras, monomial algebras and their combinatorial resolution."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .algebra import INF, Poly, multi_indices
from .algebra.order import Order
from .errors import PreconditionError, TheoremViolation
from .geometry import (Center, Chart, CoordPoint, Divisor, DivisorLedger, TreeNode,
                       blowup_substitution, enumerate_coord_points)


@dataclass(frozen=True)
class WeightedAlgebra:
    """The algebra generated by g W^n for (g, n) in gens."""
    gens: tuple[tuple[Poly, int], ...] = ()

    def __post_init__(self) -> None:
        for g, n in self.gens:
            if n < 1:
                raise PreconditionError("generator weights must be positive")
            if g.is_zero():
                raise PreconditionError("zero generator")

    @classmethod
    def of(cls, gens: Iterable[tuple[Poly, int]]) -> "WeightedAlgebra":
        seen = {}
        for g, n in gens:
            if g.is_zero():
                continue
            key = (g.monic(), n)
            seen.setdefault(key, None)
        return cls(tuple(sorted(seen, key=_gen_sort_key)))

    def __len__(self) -> int:
        return len(self.gens)

    def is_empty(self) -> bool:
        return not self.gens


def _gen_sort_key(gen: tuple[Poly, int]):
    g, n = gen
    return (n, [(sum(e), e, c) for e, c in g.items()])


def rees_order_at(R: WeightedAlgebra, pt) -> Order:
    best: Order = INF
    for g, n in R.gens:
        v = Fraction(g.order_at(pt), n)
        if v < best:
            best = v
    return best


def hasse_saturate(R: WeightedAlgebra) -> WeightedAlgebra:
    """Add (Delta^alpha g, n - |alpha|) for 1 <= |alpha| < n.

    One level suffices: Delta^beta Delta^alpha is a scalar multiple of
    Delta^(alpha+beta), so derivatives of derived generators are already
    present up to a unit.  Generators are kept monic, which makes the
    operation idempotent on the nose.
    """
    out = list(R.gens)
    for g, n in R.gens:
        for alpha in multi_indices(g.nvars, 1, n - 1):
            d = g.hasse(alpha)
            if d:
                out.append((d, n - sum(alpha)))
    return WeightedAlgebra.of(out)


def transform_weighted(R: WeightedAlgebra, center_vars: Iterable[int], i: int) -> WeightedAlgebra:
    """Weighted transform g W^n -> (g after x_j -> x_i x_j) / x_i^n W^n."""
    center_vars = frozenset(center_vars)
    return WeightedAlgebra.of(
        (g.blowup_subst(center_vars, i).div_var_power(i, n), n) for g, n in R.gens
    )


# -- monomial algebras -------------------------------------------------------

MonomialAlgebra = DivisorLedger


def monomial_order_at(M: MonomialAlgebra, pt) -> Fraction:
    S = pt.vars if hasattr(pt, "vars") else frozenset(pt)
    return Fraction(sum(d.h for d in M.visible() if d.carrier in S), M.s)


def monomial_member(g: Poly, n: int, M: MonomialAlgebra) -> bool:
    if g.is_zero():
        raise PreconditionError("membership of the zero polynomial")
    return all(M.s * g.var_order(d.carrier) >= n * d.h for d in M.visible())


def membership_failures(g: Poly, n: int, M: MonomialAlgebra) -> list[str]:
    return [d.id for d in M.visible() if M.s * g.var_order(d.carrier) < n * d.h]


def monomial_truncation(M: MonomialAlgebra, t: int) -> dict[str, int]:
    """Exponents floor(h t / s) of the monomial ideal in degree t."""
    if t < 1:
        raise PreconditionError("truncation degree must be positive")
    return {d.id: (d.h * t) // M.s for d in M.entries}


def transform_monomial(M: MonomialAlgebra, center_vars: Iterable[int], chart_var: int,
                       new_id: str) -> MonomialAlgebra:
    """Transform of M W^s at a center spanned by divisor carriers."""
    center_vars = frozenset(center_vars)
    if chart_var not in center_vars:
        raise PreconditionError("chart variable is not in the center")
    carried = {d.carrier: d for d in M.visible()}
    if not center_vars <= carried.keys():
        raise PreconditionError("center variables must carry visible divisors")
    sigma = sum(carried[v].h for v in center_vars)
    if sigma < M.s:
        raise PreconditionError(f"center not permissible: sum of exponents {sigma} < s = {M.s}")
    entries = [replace(d, carrier=None) if d.carrier == chart_var else d for d in M.entries]
    entries.append(Divisor(new_id, chart_var, sigma - M.s))
    return DivisorLedger(tuple(entries), M.s)


def carrier_exponents(M: MonomialAlgebra, names: Sequence[str]) -> dict[str, int]:
    """Visible exponents keyed by the carrying variable's name."""
    return {names[d.carrier]: d.h for d in sorted(M.visible(), key=lambda d: d.carrier)}


def next_monomial_center(M: MonomialAlgebra) -> frozenset[int] | None:
    """Smallest, then lexicographically least, set of carriers with sum h >= s.

    Singletons come first, so every divisor with h >= s is reduced by
    codimension-one steps before any intersection is blown up.
    """
    vis = sorted(d.carrier for d in M.visible())
    h = {d.carrier: d.h for d in M.visible()}
    if sum(h.values()) < M.s:
        return None
    for k in range(1, len(vis) + 1):
        for T in combinations(vis, k):
            if sum(h[v] for v in T) >= M.s:
                return frozenset(T)
    return None


def monomial_profile(M: MonomialAlgebra, nvars: int) -> tuple[Fraction, int]:
    """(max order over coordinate points, number of points attaining it)."""
    orders = [monomial_order_at(M, pt) for pt in enumerate_coord_points(nvars)]
    if not orders:
        return Fraction(0), 0
    top = max(orders)
    return top, orders.count(top)


@dataclass
class MonomialResolution:
    root: TreeNode
    steps: list[tuple[str, frozenset[int]]] = field(default_factory=list)

    def leaves(self) -> list[TreeNode]:
        return self.root.leaves()

    def max_final_order(self) -> Fraction:
        return max((monomial_profile(n.chart.ledger, n.chart.nvars)[0] for n in self.leaves()),
                   default=Fraction(0))

    def depth(self) -> int:
        def rec(node: TreeNode) -> int:
            return 0 if not node.children else 1 + max(rec(c) for c in node.children)
        return rec(self.root)


def depth_bound(M: MonomialAlgebra) -> int:
    # every step lowers s * (origin order) by at least one
    total = sum(d.h for d in M.visible())
    return max(0, total - M.s + 1)


def resolve_monomial(M: MonomialAlgebra, chart: Chart) -> MonomialResolution:
    chart = chart.with_ledger(M)
    root = TreeNode(chart)
    res = MonomialResolution(root)
    stack = [root]
    while stack:
        node = stack.pop()
        led = node.chart.ledger
        T = next_monomial_center(led)
        if T is None:
            continue
        res.steps.append((node.chart.id, T))
        before = monomial_profile(led, node.chart.nvars)
        node.record = Center(True, T)
        for i in sorted(T):
            new_led = transform_monomial(led, T, i, node.chart.new_divisor_id())
            child_chart, _ = blowup_substitution(node.chart, Center(True, T), i,
                                                 new_exponent=new_led.entries[-1].h)
            if child_chart.ledger != new_led:
                raise TheoremViolation("ledger bookkeeping disagrees with the monomial transform")
            after = monomial_profile(new_led, child_chart.nvars)
            if not after < before:
                raise TheoremViolation(
                    f"resolution invariant did not drop at {child_chart.id}: {before} -> {after}")
            child = TreeNode(child_chart)
            node.children.append(child)
        stack.extend(reversed(node.children))
    return res
