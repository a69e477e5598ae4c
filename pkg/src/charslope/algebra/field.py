"""Finite fields F_{p^m}.

Elements are plain ints.  For m = 1 they are residues mod p; for m > 1 the
int packs the coefficient vector of a polynomial in t (base-p digits, lowest
degree first) reduced modulo the defining polynomial.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ..errors import FieldError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    # mod is monic, coefficients low -> high
    a = [c % p for c in a]
    dm = len(mod) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k]
        if c:
            for j in range(dm + 1):
                a[k - dm + j] = (a[k - dm + j] - c * mod[j]) % p
    del a[dm:]
    return a


def is_irreducible(mod: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = len(mod) - 1
    if d < 1 or mod[-1] % p != 1:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            cand = list(low) + [1]
            if not any(_poly_mod(list(mod), cand, p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None  # low -> high, monic, degree m
    _tables: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise FieldError("extension degree must be >= 1")
        if self.m == 1:
            if self.modulus is not None and len(self.modulus) != 2:
                raise FieldError("modulus must have degree 1 when m = 1")
            object.__setattr__(self, "modulus", None)
            return
        if self.modulus is None:
            raise FieldError("an explicit modulus is required when m > 1")
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) != self.m + 1:
            raise FieldError(f"modulus must have degree {self.m}")
        if not is_irreducible(mod, self.p):
            raise FieldError("modulus is reducible over F_p")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p ** self.m

    # -- conversions -------------------------------------------------------
    def from_vector(self, vec: Sequence[int]) -> int:
        if self.m == 1:
            if len(vec) != 1:
                raise FieldError("prime field elements are single integers")
            return vec[0] % self.p
        if len(vec) > self.m:
            vec = _poly_mod(list(vec), self.modulus, self.p)
        out = 0
        for c in reversed(vec):
            out = out * self.p + (c % self.p)
        return out

    def to_vector(self, a: int) -> list[int]:
        vec = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            vec.append(r)
        return vec

    def element(self, c) -> int:
        # ints in range(q) are encodings; other ints are read in the prime field
        if isinstance(c, int):
            if self.m == 1:
                return c % self.p
            if 0 <= c < self.q:
                return c
            return self.from_vector([c])
        return self.from_vector(list(c))

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    # -- arithmetic --------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        va, vb = self.to_vector(a), self.to_vector(b)
        return self.from_vector([x + y for x, y in zip(va, vb)])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_vector([-x for x in self.to_vector(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _log_tables(self) -> tuple[list[int], list[int]]:
        t = self._tables.get("log")
        if t is None:
            t = self._build_log_tables()
            self._tables["log"] = t
        return t

    def _raw_mul(self, a: int, b: int) -> int:
        va, vb = self.to_vector(a), self.to_vector(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        return self.from_vector(_poly_mod(prod, self.modulus, self.p))

    def _build_log_tables(self) -> tuple[list[int], list[int]]:
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._raw_mul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                log = [0] * q
                for k, v in enumerate(exp):
                    log[v] = k
                return exp, log
        # q == 2 is impossible here (m > 1); q == 4 etc. always have a generator
        raise FieldError("no primitive element found")

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._log_tables()
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._log_tables()
        return exp[(-log[a]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if self.m == 1:
            if k < 0:
                return pow(self.inv(a), -k, self.p)
            return pow(a, k, self.p)
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("inverse of zero in a finite field")
            return 1 if k == 0 else 0
        exp, log = self._log_tables()
        return exp[(log[a] * k) % (self.q - 1)]

    def pe_root(self, c: int, e: int) -> int:
        """The unique r with r^(p^e) = c (Frobenius is bijective on F_q)."""
        if self.m == 1:
            return c
        return self.pow(c, self.p ** ((-e) % self.m))

    def format(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        parts = []
        for k, c in enumerate(self.to_vector(a)):
            if c:
                mono = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
                parts.append(mono if c == 1 and k else (f"{c}" if k == 0 else f"{c}*{mono}"))
        return "(" + "+".join(reversed(parts)) + ")" if parts else "0"


def field_pe_root(fld: FieldSpec, c: int, e: int) -> int:
    return fld.pe_root(c, e)
