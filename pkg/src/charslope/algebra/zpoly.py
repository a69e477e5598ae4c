"""Polynomials in z over a Poly ring.

A z-polynomial is a list of Poly coefficients, lowest degree first.
Presentation coefficients a_1..a_q describe f = z^q + a_1 z^(q-1) + ... + a_q.
"""
from __future__ import annotations

from math import comb
from typing import Sequence

from ..errors import ArityError, PreconditionError
from .poly import Poly

ZPoly = list


def from_presentation(coeffs: Sequence[Poly]) -> ZPoly:
    if not coeffs:
        raise ArityError("empty coefficient list")
    one = Poly.const(coeffs[0].field, coeffs[0].nvars, 1)
    q = len(coeffs)
    out = [None] * (q + 1)
    out[q] = one
    for i, a in enumerate(coeffs, start=1):
        out[q - i] = a
    return out


def to_presentation(f: ZPoly) -> list[Poly]:
    q = len(f) - 1
    if f[q] != 1:
        raise PreconditionError("z-polynomial is not monic of the expected degree")
    return [f[q - i] for i in range(1, q + 1)]


def trim(f: ZPoly) -> ZPoly:
    f = list(f)
    while len(f) > 1 and f[-1].is_zero():
        f.pop()
    return f


def is_zero(f: ZPoly) -> bool:
    return all(c.is_zero() for c in f)


def hasse_z(f: ZPoly, j: int) -> ZPoly:
    """Delta^(j) in z: sum_k C(k, j) c_k z^(k-j).  Length is kept at len(f)-j."""
    p = f[0].field.p
    out = []
    for k in range(j, len(f)):
        b = comb(k, j) % p
        out.append(f[k].scale(b) if b else Poly.zero(f[k].field, f[k].nvars))
    return out


def shift(f: ZPoly, alpha: Poly) -> ZPoly:
    """Coefficients of f(z + alpha) by Horner's rule."""
    zero = Poly.zero(alpha.field, alpha.nvars)
    g: ZPoly = [zero]
    for c in reversed(f):
        # g <- g*(z + alpha) + c
        ng = [zero] * (len(g) + 1)
        for k, b in enumerate(g):
            if b:
                ng[k + 1] = ng[k + 1] + b
                ng[k] = ng[k] + b * alpha
        ng[0] = ng[0] + c
        g = ng
    return g[: len(f)]


def shift_z(coeffs: Sequence[Poly], alpha: Poly) -> list[Poly]:
    """New presentation coefficients after the section change by alpha.

    The new constant term is f(alpha) = alpha^q + a_1 alpha^(q-1) + ... + a_q.
    """
    for a in coeffs:
        a._check(alpha)
    return to_presentation(shift(from_presentation(coeffs), alpha))


def scale_section(coeffs: Sequence[Poly], u: int) -> list[Poly]:
    """a_i -> u^i a_i, i.e. u^q f(z/u)."""
    F = coeffs[0].field
    if F.element(u) == 0:
        raise PreconditionError("section scaling by zero")
    return [a.scale(F.pow(F.element(u), i)) for i, a in enumerate(coeffs, start=1)]


def rem_monic(g: ZPoly, f: ZPoly) -> ZPoly:
    """Remainder of g modulo the monic f (length deg f)."""
    n = len(f) - 1
    if f[n] != 1:
        raise PreconditionError("modulus is not monic")
    g = list(g)
    for k in range(len(g) - 1, n - 1, -1):
        c = g[k]
        if c:
            for j in range(n):
                if f[j]:
                    g[k - n + j] = g[k - n + j] - c * f[j]
    zero = Poly.zero(f[0].field, f[0].nvars)
    g = g[:n]
    while len(g) < n:
        g.append(zero)
    return g


def det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Division-free determinant: Laplace expansion memoised on column sets."""
    n = len(matrix)
    if n == 0:
        raise PreconditionError("empty matrix")
    sample = matrix[0][0]
    dp: dict[int, Poly] = {0: Poly.const(sample.field, sample.nvars, 1)}
    for r in range(n):
        row = matrix[r]
        nxt: dict[int, Poly] = {}
        for mask, val in dp.items():
            for c in range(n):
                bit = 1 << c
                if mask & bit or row[c].is_zero():
                    continue
                term = val * row[c]
                if bin(mask >> (c + 1)).count("1") % 2:
                    term = -term
                m2 = mask | bit
                nxt[m2] = nxt[m2] + term if m2 in nxt else term
        dp = {m: v for m, v in nxt.items() if v}
        if not dp:
            return Poly.zero(sample.field, sample.nvars)
    return dp.get((1 << n) - 1, Poly.zero(sample.field, sample.nvars))


def sylvester_matrix(f: ZPoly, g: ZPoly, k: int) -> list[list[Poly]]:
    """(n+k) x (n+k) Sylvester matrix with g read at declared degree k."""
    n = len(f) - 1
    if len(g) - 1 > k and not all(c.is_zero() for c in g[k + 1:]):
        raise PreconditionError("declared degree below the actual degree of g")
    zero = Poly.zero(f[0].field, f[0].nvars)
    g = list(g[: k + 1]) + [zero] * (k + 1 - len(g))
    size = n + k
    rows = []
    fh = list(reversed(f))
    gh = list(reversed(g))
    for r in range(k):
        rows.append([zero] * r + fh + [zero] * (size - r - n - 1))
    for r in range(n):
        rows.append([zero] * r + gh + [zero] * (size - r - k - 1))
    return rows


def resultant_sylvester(f: ZPoly, g: ZPoly, k: int) -> Poly:
    n = len(f) - 1
    if f[n] != 1:
        raise PreconditionError("f is not monic")
    if k == 0:
        c = g[0] if g else Poly.zero(f[0].field, f[0].nvars)
        return c ** n
    return det(sylvester_matrix(f, g, k))


def resultant_norm(f: ZPoly, g: ZPoly) -> Poly:
    """det of multiplication by g on O[z]/(f); equals Res(f, g) for monic f."""
    n = len(f) - 1
    if f[n] != 1:
        raise PreconditionError("f is not monic")
    if n == 0:
        return Poly.const(f[0].field, f[0].nvars, 1)
    zero = Poly.zero(f[0].field, f[0].nvars)
    cols = []
    cur = rem_monic(g, f)
    for j in range(n):
        cols.append(cur)
        if j + 1 < n:
            cur = rem_monic([zero] + cur, f)
    matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
    return det(matrix)


def resultant_z(f: ZPoly, g: ZPoly, declared_deg_g: int) -> Poly:
    """Sylvester resultant of a monic f and g read at the declared degree.

    For monic f the Sylvester determinant does not depend on padding g with
    zero leading coefficients, and it coincides with the norm determinant,
    which is the smaller of the two matrices.  The norm route is used.
    """
    n = len(f) - 1
    if f[n] != 1:
        raise PreconditionError("f is not monic")
    if len(g) - 1 > declared_deg_g and not all(c.is_zero() for c in g[declared_deg_g + 1:]):
        raise PreconditionError("declared degree below the actual degree of g")
    return resultant_norm(f, trim(g))
