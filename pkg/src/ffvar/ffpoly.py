"""Polynomials over a prime field F_q.

A :class:`Poly` stores its coefficients constant term first with no
trailing zeros. Text form is ``"q=3:[2,0,1]"`` for 2 + T^2 over F_3.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .kernels import ExtFactType, index_digits, monic_table

NEG_INF = float("-inf")


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, math.isqrt(q) + 1))


def mobius_int(e: int) -> int:
    if e == 1:
        return 1
    result, m, p = 1, e, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def necklace_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q."""
    total = sum(mobius_int(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0)
    return total // d


@dataclass(frozen=True)
class FieldSpec:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"q={self.q} is not prime (only prime fields are supported)")


class Poly:
    __slots__ = ("q", "coeffs")

    def __init__(self, coeffs, q: int):
        c = [int(a) % q for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.q = q
        self.coeffs: Tuple[int, ...] = tuple(c)

    # -- construction -------------------------------------------------
    @classmethod
    def monic_from_index(cls, idx: int, q: int, n: int) -> "Poly":
        digits = []
        for _ in range(n):
            idx, r = divmod(idx, q)
            digits.append(r)
        return cls(digits + [1], q)

    @classmethod
    def parse(cls, text: str) -> "Poly":
        m = re.fullmatch(r"\s*q\s*=\s*(\d+)\s*:\s*\[([^\]]*)\]\s*", text)
        if not m:
            raise ValueError(f"cannot parse polynomial {text!r}; expected e.g. 'q=3:[2,0,1]'")
        q = int(m.group(1))
        FieldSpec(q)
        body = m.group(2).strip()
        coeffs = [int(x) for x in body.split(",")] if body else []
        return cls(coeffs, q)

    def __str__(self) -> str:
        return f"q={self.q}:[{','.join(map(str, self.coeffs))}]"

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)}, q={self.q})"

    # -- basic properties ---------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def const(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def monic_index(self) -> int:
        if not self.is_monic():
            raise ValueError("only monic polynomials have an index")
        return sum(a * self.q**i for i, a in enumerate(self.coeffs[:-1]))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.q, self.coeffs))

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "Poly"):
        if self.q != other.q:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], self.q)

    def __neg__(self) -> "Poly":
        return Poly([-a for a in self.coeffs], self.q)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly([a * other for a in self.coeffs], self.q)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly([], self.q)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out, self.q)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        out = Poly([1], self.q)
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q = self.q
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        inv = pow(other.lead(), q - 2, q)
        quot = [0] * max(0, len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv % q
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] = (rem[i - dq + j] - c * b) % q
        return Poly(quot, q), Poly(rem[:dq] if dq > 0 else [], q)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def mod_t_power(self, m: int) -> "Poly":
        return Poly(self.coeffs[:m], self.q)

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ValueError("zero polynomial has no monic associate")
        inv = pow(self.lead(), self.q - 2, self.q)
        return self * inv

    def derivative(self) -> "Poly":
        return Poly([i * a for i, a in enumerate(self.coeffs)][1:], self.q)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


# -- enumeration ---------------------------------------------------------

def enumerate_monics(F, n: int, start: int = 0, stop: Optional[int] = None) -> Iterator[Poly]:
    """Monics of degree n in index order; ``start``/``stop`` select a shard."""
    q = F.q if isinstance(F, FieldSpec) else int(F)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    total = q**n
    stop = total if stop is None else min(stop, total)
    for idx in range(start, stop):
        yield Poly.monic_from_index(idx, q, n)


def shard_range(total: int, shards: int, index: int) -> Tuple[int, int]:
    if not 0 <= index < shards:
        raise ValueError("shard index out of range")
    return total * index // shards, total * (index + 1) // shards


@lru_cache(maxsize=None)
def _irreducibles_cached(q: int, d: int) -> Tuple[Poly, ...]:
    tab = monic_table(q, d)
    polys = tuple(Poly.monic_from_index(int(i), q, d) for i in tab.irreducible_indices(d))
    expected = necklace_count(q, d)
    if len(polys) != expected:
        raise AssertionError(f"found {len(polys)} irreducibles of degree {d} over F_{q}, expected {expected}")
    return polys


def irreducibles(F, d: int) -> List[Poly]:
    q = F.q if isinstance(F, FieldSpec) else int(F)
    if d < 1:
        raise ValueError("degree must be at least 1")
    return list(_irreducibles_cached(q, d))


# -- factorization -------------------------------------------------------

def factor(f: Poly) -> Tuple[ExtFactType, List[Tuple[Poly, int]]]:
    """Extended factorization type and prime factorization of f.

    Non-monic input is first normalised by its leading coefficient.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    g = f.monic()
    q = f.q
    factors: List[Tuple[Poly, int]] = []
    d = 1
    while g.degree >= 2 * d:
        for P in _irreducibles_cached(q, d):
            e = 0
            while True:
                quo, rem = g.divmod(P)
                if not rem.is_zero():
                    break
                g, e = quo, e + 1
            if e:
                factors.append((P, e))
        d += 1
    if g.degree >= 1:
        # what is left has no factor of degree <= deg/2, so it is prime
        for i, (P, e) in enumerate(factors):
            if P == g:
                factors[i] = (P, e + 1)
                break
        else:
            factors.append((g, 1))
    ext = tuple(sorted(((P.degree, e) for P, e in factors), reverse=True))
    return ext, factors


def ext_type(f: Poly) -> ExtFactType:
    return factor(f)[0]


def is_squarefree_type(t: ExtFactType) -> bool:
    return all(e == 1 for _, e in t)


def type_degree(t: ExtFactType) -> int:
    return sum(m * e for m, e in t)


def factorization_type(f: Poly):
    """Partition of deg f for squarefree f, else the empty marker ``None``."""
    t = ext_type(f)
    if not is_squarefree_type(t):
        return None
    return tuple(m for m, _ in t)


def is_squarefree(f: Poly) -> bool:
    if f.is_zero():
        raise ValueError("zero polynomial")
    by_factor = is_squarefree_type(ext_type(f))
    by_gcd = poly_gcd(f, f.derivative()).degree == 0
    if by_factor != by_gcd:
        raise AssertionError(f"squarefree tests disagree on {f}")
    return by_factor


# -- short intervals and the star involution -----------------------------

def interval(f: Poly, h: int) -> Iterator[Poly]:
    """All monic g with deg(f - g) <= h."""
    n = f.degree
    if not f.is_monic():
        raise ValueError("interval centre must be monic")
    if not 0 <= h < n:
        raise ValueError(f"need 0 <= h < deg f, got h={h}, n={n}")
    q = f.q
    top = list(f.coeffs[h + 1:])
    for low in range(q ** (h + 1)):
        digits = []
        for _ in range(h + 1):
            low, r = divmod(low, q)
            digits.append(r)
        yield Poly(digits + top, q)


def interval_id(idx, q: int, h: int):
    """Short interval label of monic index/indices (top coefficients)."""
    return idx // q ** (h + 1)


def star(f: Poly, n: Optional[int] = None) -> Poly:
    """Coefficient reversal at degree n (default deg f); needs f(0) != 0."""
    if f.const() == 0:
        raise ValueError("star needs a nonzero constant coefficient")
    n = f.degree if n is None else n
    c = list(f.coeffs) + [0] * (n + 1 - len(f.coeffs))
    return Poly(c[::-1], f.q)


def monic_coeff_matrix(q: int, n: int, idx=None) -> np.ndarray:
    """Coefficient rows (constant first, leading 1 included) for monic indices."""
    idx = np.arange(q**n, dtype=np.int64) if idx is None else np.asarray(idx, dtype=np.int64)
    out = np.ones((idx.shape[0], n + 1), dtype=np.int64)
    if n:
        out[:, :n] = index_digits(idx, q, n)
    return out
