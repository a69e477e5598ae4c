"""Sparse multivariate polynomials over F_{p^m}.

A Poly is an immutable map from exponent tuples to nonzero field elements.
Iteration order is graded-lex, highest first.
"""
from __future__ import annotations

from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from ..errors import ArityError, PreconditionError, InexactDivision
from .field import FieldSpec
from .order import INF

Exp = tuple[int, ...]

MAX_EXPONENT = 2**63 - 1


def grlex_key(e: Exp) -> tuple[int, Exp]:
    return (sum(e), e)


def _point_vars(point) -> tuple[frozenset[int], object]:
    if hasattr(point, "vars"):
        return frozenset(point.vars), getattr(point, "translation", None)
    return frozenset(point), None


class Poly:
    __slots__ = ("field", "nvars", "_terms", "_hash")

    def __init__(self, field: FieldSpec, nvars: int, terms: Mapping[Exp, int] | None = None,
                 *, _trusted: bool = False):
        self.field = field
        self.nvars = nvars
        self._hash = None
        if _trusted:
            self._terms = terms  # type: ignore[assignment]
            return
        clean: dict[Exp, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ArityError(f"exponent {e} has length {len(e)}, expected {nvars}")
            if any(x < 0 for x in e):
                raise ArityError(f"negative exponent in {e}")
            if any(x > MAX_EXPONENT for x in e):
                raise OverflowError(f"exponent {e} exceeds machine width")
            c = field.element(c)
            if c:
                if e in clean:
                    c = field.add(clean[e], c)
                    if c:
                        clean[e] = c
                    else:
                        del clean[e]
                else:
                    clean[e] = c
        self._terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, field: FieldSpec, nvars: int) -> "Poly":
        return cls(field, nvars, {}, _trusted=True)

    @classmethod
    def const(cls, field: FieldSpec, nvars: int, c: int = 1) -> "Poly":
        c = field.element(c)
        return cls(field, nvars, {(0,) * nvars: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, field: FieldSpec, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1}, _trusted=True)

    @classmethod
    def monomial(cls, field: FieldSpec, nvars: int, exp: Sequence[int], c: int = 1) -> "Poly":
        return cls(field, nvars, {tuple(exp): c})

    # -- basic protocol ----------------------------------------------------
    @property
    def terms(self) -> Mapping[Exp, int]:
        return self._terms

    def items(self) -> list[tuple[Exp, int]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == Poly.const(self.field, self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: "Poly") -> None:
        if self.field != other.field:
            raise ArityError("polynomials over different fields")
        if self.nvars != other.nvars:
            raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return Poly.const(self.field, self.nvars, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    # -- ring operations ---------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        F = self.field
        if F.m == 1:
            p = F.p
            for e, c in small.items():
                v = (out.get(e, 0) + c) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        else:
            for e, c in small.items():
                v = F.add(out.get(e, 0), c)
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(F, self.nvars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, self.nvars, {e: F.neg(c) for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c: int) -> "Poly":
        F = self.field
        c = F.element(c)
        if not c:
            return Poly.zero(F, self.nvars)
        if c == 1:
            return self
        return Poly(F, self.nvars, {e: F.mul(a, c) for e, a in self._terms.items()}, _trusted=True)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        F = self.field
        a, b = self._terms, other._terms
        if not a or not b:
            return Poly.zero(F, self.nvars)
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exp, int] = {}
        if F.m == 1:
            p = F.p
            for eb, cb in b.items():
                for ea, ca in a.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = out.get(e, 0) + ca * cb
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            for eb, cb in b.items():
                for ea, ca in a.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = F.add(out.get(e, 0), F.mul(ca, cb))
            out = {e: c for e, c in out.items() if c}
        return Poly(F, self.nvars, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        if len(self._terms) == 1:
            (e, c), = self._terms.items()
            ne = tuple(x * k for x in e)
            if any(x > MAX_EXPONENT for x in ne):
                raise OverflowError("exponent exceeds machine width")
            return Poly(self.field, self.nvars, {ne: self.field.pow(c, k)}, _trusted=True)
        result = Poly.const(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structural queries ------------------------------------------------
    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def leading(self) -> tuple[Exp, int]:
        if not self._terms:
            raise PreconditionError("zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def monic(self) -> "Poly":
        """Scalar multiple with leading coefficient 1 (graded-lex)."""
        if not self._terms:
            return self
        return self.scale(self.field.inv(self.leading()[1]))

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def var_order(self, i: int) -> int | object:
        if not self._terms:
            return INF
        return min(e[i] for e in self._terms)

    def order_at(self, point) -> int | object:
        """min over terms of the degree in the point's variables; INF for 0."""
        S, translation = _point_vars(point)
        g = self.translate(translation) if translation else self
        if not g._terms:
            return INF
        idx = sorted(S)
        return min(sum(e[i] for i in idx) for e in g._terms)

    def initial_form(self, point) -> "Poly":
        S, translation = _point_vars(point)
        g = self.translate(translation) if translation else self
        if not g._terms:
            raise PreconditionError("initial form of the zero polynomial")
        idx = sorted(S)
        degs = {e: sum(e[i] for i in idx) for e in g._terms}
        low = min(degs.values())
        return Poly(g.field, g.nvars, {e: c for e, c in g._terms.items() if degs[e] == low},
                    _trusted=True)

    def hasse(self, alpha: Sequence[int]) -> "Poly":
        """Coefficient of T^alpha in g(x + T)."""
        alpha = tuple(alpha)
        if len(alpha) != self.nvars:
            raise ArityError("multi-index length mismatch")
        if not any(alpha):
            return self
        F = self.field
        p = F.p
        out: dict[Exp, int] = {}
        for e, c in self._terms.items():
            b = 1
            for x, a in zip(e, alpha):
                if a > x:
                    b = 0
                    break
                b = (b * comb(x, a)) % p
                if not b:
                    break
            if b:
                out[tuple(x - a for x, a in zip(e, alpha))] = F.mul(c, b % p)
        return Poly(F, self.nvars, out, _trusted=True)

    def pe_root(self, e: int) -> "Poly | None":
        F = self.field
        q = F.p ** e
        if not self._terms:
            raise PreconditionError("p^e-th root of the zero polynomial")
        out: dict[Exp, int] = {}
        for ex, c in self._terms.items():
            if any(x % q for x in ex):
                return None
            out[tuple(x // q for x in ex)] = F.pe_root(c, e)
        return Poly(F, self.nvars, out, _trusted=True)

    # -- substitutions -----------------------------------------------------
    def map_exponents(self, fn: Callable[[Exp], Exp]) -> "Poly":
        """Apply an injective monomial map to every exponent vector."""
        out = {}
        for e, c in self._terms.items():
            ne = fn(e)
            if ne in out:
                raise PreconditionError("monomial map is not injective")
            out[ne] = c
        return Poly(self.field, self.nvars, out, _trusted=True)

    def blowup_subst(self, center: Iterable[int], i: int) -> "Poly":
        """x_j -> x_i x_j for j in center minus {i}."""
        others = [j for j in center if j != i]

        def fn(e: Exp) -> Exp:
            ne = list(e)
            ne[i] += sum(e[j] for j in others)
            return tuple(ne)

        return self.map_exponents(fn)

    def div_var_power(self, i: int, k: int) -> "Poly":
        """Exact division by x_i^k."""
        if k == 0:
            return self
        out = {}
        for e, c in self._terms.items():
            if e[i] < k:
                raise InexactDivision(f"term with x_{i}-degree {e[i]} not divisible by x_{i}^{k}")
            ne = list(e)
            ne[i] -= k
            out[tuple(ne)] = c
        return Poly(self.field, self.nvars, out, _trusted=True)

    def translate(self, c: Sequence[int] | None) -> "Poly":
        """Compose with x_i -> x_i + c_i."""
        if c is None:
            return self
        if len(c) != self.nvars:
            raise ArityError("translation vector length mismatch")
        F = self.field
        c = [F.element(x) for x in c]
        if not any(c):
            return self
        n = self.nvars
        lin = [Poly.var(F, n, i) + Poly.const(F, n, c[i]) if c[i] else Poly.var(F, n, i)
               for i in range(n)]
        return self.compose(lin)

    def compose(self, subs: Sequence["Poly"]) -> "Poly":
        """Substitute subs[i] for x_i.  All subs share one ring."""
        if len(subs) != self.nvars:
            raise ArityError("substitution length mismatch")
        if not self._terms:
            return Poly.zero(self.field, subs[0].nvars if subs else 0)
        target = subs[0]
        cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, k: int) -> Poly:
            key = (i, k)
            if key not in cache:
                cache[key] = subs[i] ** k
            return cache[key]

        acc = Poly.zero(self.field, target.nvars)
        for e, c in self._terms.items():
            term = Poly.const(self.field, target.nvars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def specialize(self, i: int, value: int) -> "Poly":
        """Set x_i to a field constant (the variable stays, with degree 0)."""
        F = self.field
        value = F.element(value)
        out: dict[Exp, int] = {}
        for e, c in self._terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            ne = tuple(ne)
            v = F.mul(c, F.pow(value, k)) if k else c
            if v:
                s = F.add(out.get(ne, 0), v)
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
        return Poly(F, self.nvars, out, _trusted=True)

    # -- display -----------------------------------------------------------
    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = list(names) if names else [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = self.field.format(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.format()})"


def order_at(g: Poly, point):
    return g.order_at(point)


def initial_form(g: Poly, point) -> Poly:
    return g.initial_form(point)


def hasse_derivative(g: Poly, alpha: Sequence[int]) -> Poly:
    return g.hasse(alpha)


def pe_power_root(g: Poly, e: int) -> Poly | None:
    return g.pe_root(e)


def multi_indices(n: int, lo: int, hi: int):
    """All alpha in N^n with lo <= |alpha| <= hi."""
    def rec(k: int, budget: int, prefix: list[int]):
        if k == n - 1:
            yield tuple(prefix + [budget])
            return
        for a in range(budget + 1):
            yield from rec(k + 1, budget - a, prefix + [a])

    if n == 0:
        if lo <= 0 <= hi:
            yield ()
        return
    for total in range(lo, hi + 1):
        yield from rec(0, total, [])
