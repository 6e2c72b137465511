"""Factorization functions and their factorization-Fourier expansions.

A factorization function is stored as a map from extended factorization
type (a sorted tuple of ``(degree, exponent)`` pairs) to an exact rational,
so its value on a polynomial depends on nothing else by construction.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .ffpoly import Poly, factor, is_squarefree_type, type_degree
from .kernels import ExtFactType, monic_table
from .partitions import Partition, check_partition, enumerate_partitions
from .symmetric import cauchy_probability, character, schur_ones


def squarefree_type(lam: Partition) -> ExtFactType:
    return tuple((m, 1) for m in sorted(lam, reverse=True))


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


@dataclass(eq=False)
class FactorizationFunction:
    name: str
    func: Callable[[ExtFactType], Fraction]
    _cache: Dict[ExtFactType, Fraction] = field(default_factory=dict, repr=False)

    def __call__(self, t: ExtFactType) -> Fraction:
        t = tuple(sorted(t, reverse=True))
        v = self._cache.get(t)
        if v is None:
            v = Fraction(self.func(t))
            self._cache[t] = v
        return v

    def on_poly(self, f: Poly) -> Fraction:
        return self(factor(f)[0])

    def on_partition(self, lam: Partition) -> Fraction:
        """Value on squarefree polynomials of factorization type ``lam``."""
        return self(squarefree_type(lam))

    def squarefree_class_values(self, n: int) -> Dict[Partition, Fraction]:
        return {lam: self.on_partition(lam) for lam in enumerate_partitions(n)}

    def __add__(self, other: "FactorizationFunction") -> "FactorizationFunction":
        return FactorizationFunction(f"({self.name}+{other.name})", lambda t: self(t) + other(t))

    def __sub__(self, other: "FactorizationFunction") -> "FactorizationFunction":
        return FactorizationFunction(f"({self.name}-{other.name})", lambda t: self(t) - other(t))

    def scaled(self, c) -> "FactorizationFunction":
        c = Fraction(c)
        return FactorizationFunction(f"{c}*{self.name}", lambda t: c * self(t))

    def __mul__(self, other: "FactorizationFunction") -> "FactorizationFunction":
        # pointwise product, not convolution
        return FactorizationFunction(f"{self.name}*{other.name}", lambda t: self(t) * other(t))


# -- named functions ------------------------------------------------------

def _squarefree_divisor_degrees(t: ExtFactType):
    """Yield (|J|, deg of prod J) over subsets J of the distinct primes."""
    degs = [m for m, _ in t]
    for mask in itertools.product((0, 1), repeat=len(degs)):
        yield sum(mask), sum(d for d, b in zip(degs, mask) if b)


def _mu(t):
    return 0 if any(e > 1 for _, e in t) else (-1) ** len(t)


def _von_mangoldt(t):
    return t[0][0] if len(t) == 1 else 0


def _lambda_j(j):
    def f(t):
        n = type_degree(t)
        return sum((-1) ** size * (n - deg) ** j for size, deg in _squarefree_divisor_degrees(t))
    return f


def _mu_trunc(s):
    def f(t):
        return sum((-1) ** size for size, deg in _squarefree_divisor_degrees(t) if deg <= s)
    return f


def _d_k(k):
    def f(t):
        out = 1
        for _, e in t:
            out *= math.comb(e + k - 1, k - 1)
        return out
    return f


def _char_x(lam):
    n = sum(lam)

    def f(t):
        if type_degree(t) != n or not is_squarefree_type(t):
            return 0
        return character(lam, tuple(m for m, _ in t))
    return f


def convolve(a: FactorizationFunction, b: FactorizationFunction) -> FactorizationFunction:
    """Dirichlet convolution, splitting each prime power between the factors."""

    def f(t):
        total = Fraction(0)
        for split in itertools.product(*[range(e + 1) for _, e in t]):
            t1 = tuple((m, s) for (m, _), s in zip(t, split) if s)
            t2 = tuple((m, e - s) for (m, e), s in zip(t, split) if e - s)
            total += a(t1) * b(t2)
        return total

    return FactorizationFunction(f"({a.name}*{b.name})", f)


def iota(pairs: Sequence[Tuple[int, int]]) -> FactorizationFunction:
    """Iterated convolution of prime-power indicators iota_{m,e}."""
    pairs = [tuple(p) for p in pairs]
    if not pairs or any(m < 1 or e < 1 for m, e in pairs):
        raise ValueError("iota needs positive (m, e) pairs")
    fns = [FactorizationFunction(f"iota_{m},{e}", lambda t, m=m, e=e: 1 if t == ((m, e),) else 0)
           for m, e in pairs]
    out = fns[0]
    for g in fns[1:]:
        out = convolve(out, g)
    if len(pairs) > 1:
        out.name = "iota_" + ";".join(f"{m},{e}" for m, e in pairs)
    return out


NAMES = ("const1", "mu", "mu_squared", "lambda", "lambda_j", "mu_trunc",
         "d_k", "omega", "mu_omega", "iota", "char_X")


def named(name: str, *params) -> FactorizationFunction:
    """Build a named factorization function; see ``NAMES``."""
    params = tuple(int(p) for p in params)

    def need(count):
        if len(params) != count:
            raise ValueError(f"{name} takes {count} parameter(s), got {len(params)}")

    if name == "const1":
        need(0)
        return FactorizationFunction("const1", lambda t: 1)
    if name == "mu":
        need(0)
        return FactorizationFunction("mu", _mu)
    if name == "mu_squared":
        need(0)
        return FactorizationFunction("mu_squared", lambda t: _mu(t) ** 2)
    if name == "lambda":
        need(0)
        return FactorizationFunction("lambda", _von_mangoldt)
    if name == "omega":
        need(0)
        return FactorizationFunction("omega", lambda t: len(t))
    if name == "mu_omega":
        need(0)
        return FactorizationFunction("mu_omega", lambda t: _mu(t) * len(t))
    if name == "lambda_j":
        need(1)
        if params[0] < 1:
            raise ValueError("lambda_j needs j >= 1")
        return FactorizationFunction(f"lambda_j:{params[0]}", _lambda_j(params[0]))
    if name == "mu_trunc":
        need(1)
        if params[0] < 0:
            raise ValueError("mu_trunc needs s >= 0")
        return FactorizationFunction(f"mu_trunc:{params[0]}", _mu_trunc(params[0]))
    if name == "d_k":
        need(1)
        if params[0] < 1:
            raise ValueError("d_k needs k >= 1")
        return FactorizationFunction(f"d_k:{params[0]}", _d_k(params[0]))
    if name == "iota":
        if len(params) < 2 or len(params) % 2:
            raise ValueError("iota takes pairs m,e[,m,e...]")
        return iota(list(zip(params[::2], params[1::2])))
    if name == "char_X":
        lam = check_partition(params)
        if not lam:
            raise ValueError("char_X needs a nonempty partition")
        return FactorizationFunction(f"char_X:{','.join(map(str, lam))}", _char_x(lam))
    raise ValueError(f"unknown factorization function {name!r}; known: {', '.join(NAMES)}")


def parse_function(spec: str) -> FactorizationFunction:
    """``"d_k:2"`` -> named("d_k", 2)."""
    name, _, rest = spec.partition(":")
    params = [p for p in rest.split(",") if p.strip()] if rest else []
    return named(name.strip(), *params)


def values_on_monics(a: FactorizationFunction, q: int, n: int) -> Tuple[np.ndarray, int]:
    """``(ints, den)`` with a(f) = ints[idx] / den for every monic f of degree n."""
    tab = monic_table(q, n)
    den = 1
    for t in np.unique(tab.types_of_degree(n)):
        den = math.lcm(den, a(tab.types[t]).denominator)
    return tab.evaluate(lambda t: a(t) * den, n), den


def truncated_mobius_sum(f: Poly, s: int) -> int:
    """Sum of mu(g) over monic divisors g of f with deg g <= s."""
    t = factor(f)[0]
    n = type_degree(t)
    if not 0 <= s <= n:
        raise ValueError("need 0 <= s <= deg f")
    return int(_mu_trunc(s)(t))


# -- Fourier expansions ---------------------------------------------------

@dataclass
class FourierExpansion:
    n: int
    coeffs: Dict[Partition, Fraction]
    squareful_remainder: Optional[FactorizationFunction] = None

    def coefficient(self, lam: Partition) -> Fraction:
        return self.coeffs.get(tuple(lam), Fraction(0))

    def value_on_partition(self, tau: Partition) -> Fraction:
        return sum((c * character(lam, tau) for lam, c in self.coeffs.items()), Fraction(0))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coeffs": [
                {"lambda": list(lam), "value": frac_str(self.coeffs[lam])}
                for lam in enumerate_partitions(self.n) if lam in self.coeffs
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FourierExpansion":
        coeffs = {tuple(e["lambda"]): Fraction(e["value"]) for e in data["coeffs"]}
        return cls(int(data["n"]), coeffs)


def frac_str(x) -> str:
    """``"p/q"``, or just ``"p"`` for integers; ``Fraction()`` parses both."""
    return str(Fraction(x))


def _ordered(coeffs: Dict[Partition, Fraction], n: int) -> Dict[Partition, Fraction]:
    return {lam: coeffs[lam] for lam in enumerate_partitions(n) if coeffs.get(lam, 0) != 0}


def fourier_coefficients(a: FactorizationFunction, n: int) -> FourierExpansion:
    """Exact coefficients from the S_n side: sum_nu p(nu) a(nu) X^lam(nu)."""
    if n < 1:
        raise ValueError("n must be positive")
    parts = enumerate_partitions(n)
    weights = {nu: cauchy_probability(nu) * a.on_partition(nu) for nu in parts}
    coeffs = {lam: sum((w * character(lam, nu) for nu, w in weights.items()), Fraction(0))
              for lam in parts}
    coeffs = _ordered(coeffs, n)
    exp = FourierExpansion(n, coeffs)
    for nu in parts:
        if exp.value_on_partition(nu) != a.on_partition(nu):
            raise AssertionError(f"expansion of {a.name} fails to reconstruct type {nu}")

    def remainder(t):
        if type_degree(t) != n:
            return 0
        if is_squarefree_type(t):
            return a(t) - exp.value_on_partition(tuple(m for m, _ in t))
        return a(t)

    exp.squareful_remainder = FactorizationFunction(f"b[{a.name}]", remainder)
    return exp


def _hook(r: int, s: int) -> Partition:
    return (r,) + (1,) * s


def closed_form_expansion(name: str, n: int, *params) -> FourierExpansion:
    """Coefficient maps written down directly from the known closed forms."""
    if n < 1:
        raise ValueError("n must be positive")
    coeffs: Dict[Partition, Fraction] = {}
    if name == "mu":
        coeffs[(1,) * n] = Fraction((-1) ** n)
    elif name == "mu_squared":
        coeffs[(n,)] = Fraction(1)
    elif name in ("lambda", "lambda_j"):
        j = 1 if name == "lambda" else int(params[0])
        for r in range(1, n + 1):
            coeffs[_hook(r, n - r)] = Fraction((-1) ** (n - r) * (r**j - (r - 1) ** j))
    elif name == "mu_trunc":
        s = int(params[0])
        if not 0 <= s <= n - 1:
            # s = n is the full divisor sum; its squarefree part vanishes
            if s == n:
                return FourierExpansion(n, {})
            raise ValueError("mu_trunc closed form needs 0 <= s <= n")
        coeffs[_hook(n - s, s)] = Fraction((-1) ** s)
    elif name == "d_k":
        k = int(params[0])
        for lam in enumerate_partitions(n):
            if len(lam) <= k:
                coeffs[lam] = schur_ones(lam, k)
    elif name == "omega":
        coeffs[(n,)] = harmonic(n)
        for lam in enumerate_partitions(n):
            if len(lam) >= 2 and (len(lam) == 2 or lam[2] == 1):
                big, small, nu = lam[0], lam[1], len(lam) - 2
                coeffs[lam] = (-1) ** nu * (Fraction(1, small + nu) - Fraction(1, big + nu + 1))
    elif name == "mu_omega":
        sign = (-1) ** n
        coeffs[(1,) * n] = sign * harmonic(n)
        for lam in enumerate_partitions(n):
            if lam[0] < 2 or (len(lam) > 1 and lam[1] > 2):
                continue
            nu = lam[0] - 2
            j = sum(1 for p in lam[1:] if p == 2)
            i = sum(1 for p in lam[1:] if p == 1)
            coeffs[lam] = sign * (-1) ** nu * (Fraction(1, j + nu + 1) - Fraction(1, i + j + nu + 2))
    else:
        raise ValueError(f"no closed-form expansion for {name!r}")
    return FourierExpansion(n, _ordered(coeffs, n))


CLOSED_FORM_NAMES = ("mu", "mu_squared", "lambda", "lambda_j", "mu_trunc", "d_k", "omega", "mu_omega")
