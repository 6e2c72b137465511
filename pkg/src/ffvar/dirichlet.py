"""Dirichlet characters modulo T^M, their L-polynomials and zeros.

Residues mod T^M are indexed like monics: ``sum(c_i q^i for i < M)``. A monic
of degree n with index ``idx`` therefore has residue ``(idx + q^n) % q^M``.

The unit group is split as F_q^* x U_1 with U_1 = {f = 1 mod T}; U_1 is a
p-group, decomposed greedily by splitting off an element of maximal order
in the quotient. Characters are exponent vectors; their values are exact
rotations ``num / L`` (value e^{2 pi i num/L}), with L the lcm of orders.
Character sums over the whole family are one inverse FFT over the group.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import config
from .arith import FactorizationFunction, named, values_on_monics
from .ffpoly import FieldSpec, Poly
from .kernels import index_digits
from .partitions import Partition, dual
from .symmetric import schur_eval


class CountMismatch(AssertionError):
    pass


class LFunctionError(AssertionError):
    pass


# -- residue arithmetic (batched) -----------------------------------------

def _digits(res, q, M):
    return index_digits(np.atleast_1d(res), q, M)


def _index(C, q):
    return C @ (q ** np.arange(C.shape[1], dtype=np.int64))


def _mul(A, B, q):
    M = A.shape[1]
    out = np.zeros_like(A)
    for i in range(M):
        out[:, i:] += A[:, i:i + 1] * B[:, :M - i]
    return out % q


def _pow(A, k, q):
    out = np.zeros_like(A)
    out[:, 0] = 1
    base = A.copy()
    while k:
        if k & 1:
            out = _mul(out, base, q)
        base = _mul(base, base, q)
        k >>= 1
    return out


def residue_of(f: Poly, M: int) -> int:
    return sum(c * f.q**i for i, c in enumerate(f.coeffs[:M]))


def monic_residues(q: int, n: int, M: int) -> np.ndarray:
    return (np.arange(q**n, dtype=np.int64) + q**n) % q**M


# -- unit group -----------------------------------------------------------

@dataclass(eq=False)
class UnitGroupDecomposition:
    q: int
    M: int
    generators: List[Poly]
    orders: List[int]
    dlog: np.ndarray = field(repr=False)    # (q^M, r); rows of -1 for non-units

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent_lcm(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    def units(self) -> np.ndarray:
        return np.flatnonzero(np.arange(self.q**self.M) % self.q != 0)

    def exponent_vector(self, f: Poly) -> Tuple[int, ...]:
        r = residue_of(f, self.M)
        if r % self.q == 0:
            raise ValueError(f"{f} is not a unit mod T^{self.M}")
        return tuple(int(x) for x in self.dlog[r])

    def element(self, vec: Sequence[int]) -> Poly:
        acc = np.zeros((1, self.M), dtype=np.int64)
        acc[0, 0] = 1
        for g, e in zip(self.generators, vec):
            acc = _mul(acc, _pow(_digits(residue_of(g, self.M), self.q, self.M), int(e), self.q), self.q)
        return Poly(acc[0], self.q)


def _primitive_root(q: int) -> int:
    for c in range(2, q):
        if all(pow(c, (q - 1) // p, q) != 1 for p in range(2, q) if (q - 1) % p == 0 and _isprime(p)):
            return c
    return 1


def _isprime(p):
    return p > 1 and all(p % d for d in range(2, math.isqrt(p) + 1))


def _decompose_u1(q: int, M: int):
    size = q**M
    u1 = np.arange(1, size, q, dtype=np.int64)
    member = np.full(size, -1, dtype=np.int64)
    H_res = np.array([1], dtype=np.int64)
    H_vec = np.zeros((1, 0), dtype=np.int64)
    member[1] = 0
    gens: List[int] = []
    orders: List[int] = []
    while H_res.shape[0] < u1.shape[0]:
        cand = u1[member[u1] < 0]
        cur = _digits(cand, q, M)
        ordq = np.zeros(cand.shape[0], dtype=np.int64)
        k = 1
        while (ordq == 0).any():
            cur = _pow(cur, q, q)
            k *= q
            hit = (member[_index(cur, q)] >= 0) & (ordq == 0)
            ordq[hit] = k
        best = int(np.argmax(ordq))
        x, k = int(cand[best]), int(ordq[best])
        xd = _digits(x, q, M)
        hk = int(_index(_pow(xd, k, q), q)[0])
        v_h = H_vec[member[hk]]
        ords = np.array(orders, dtype=np.int64)
        ok = np.flatnonzero(((k * H_vec) % ords == v_h).all(axis=1)) if orders else np.array([0])
        if ok.size == 0:
            raise AssertionError("greedy decomposition failed to split off a cyclic factor")
        h_root = _digits(H_res[ok[0]], q, M)
        g = _mul(xd, _pow(h_root, u1.shape[0] - 1, q), q)
        # extend H by the cosets g^i H
        blocks_res, blocks_vec = [], []
        gi = np.zeros((1, M), dtype=np.int64)
        gi[0, 0] = 1
        H_dig = _digits(H_res, q, M)
        for i in range(k):
            blocks_res.append(_index(_mul(H_dig, np.repeat(gi, H_dig.shape[0], 0), q), q))
            blocks_vec.append(np.hstack([H_vec, np.full((H_vec.shape[0], 1), i, dtype=np.int64)]))
            gi = _mul(gi, g, q)
        new_res = np.concatenate(blocks_res)
        if np.unique(new_res).shape[0] != new_res.shape[0]:
            raise AssertionError("cyclic factor intersects the previous subgroup")
        H_res, H_vec = new_res, np.vstack(blocks_vec)
        member[:] = -1
        member[H_res] = np.arange(H_res.shape[0])
        gens.append(int(_index(g, q)[0]))
        orders.append(k)
    return gens, orders, member, H_vec


@lru_cache(maxsize=None)
def unit_group(q: int, M: int) -> UnitGroupDecomposition:
    FieldSpec(q)
    if M < 1:
        raise ValueError("M must be at least 1")
    size = q**M
    gens_res, orders = [], []
    root = _primitive_root(q)
    if q > 2:
        gens_res.append(root)
        orders.append(q - 1)
    u_gens, u_orders, member, H_vec = _decompose_u1(q, M)
    gens_res += u_gens
    orders += u_orders

    dlog = np.full((size, len(orders)), -1, dtype=np.int64)
    units = np.flatnonzero(np.arange(size) % q != 0)
    digs = _digits(units, q, M)
    c0 = digs[:, 0]
    col = 0
    if q > 2:
        fq_log = np.zeros(q, dtype=np.int64)
        x = 1
        for e in range(q - 1):
            fq_log[x] = e
            x = x * root % q
        dlog[units, 0] = fq_log[c0]
        inv = np.array([pow(int(c), q - 2, q) if c else 0 for c in range(q)])
        digs = digs * inv[c0][:, None] % q
        col = 1
    dlog[units, col:] = H_vec[member[_index(digs, q)]]

    grp = UnitGroupDecomposition(q, M, [Poly(_digits(r, q, M)[0], q) for r in gens_res], orders, dlog)
    expected = q ** (M - 1) * (q - 1)
    if grp.order != expected:
        raise CountMismatch(f"unit group order {grp.order} != {expected}")
    if orders and np.unique(dlog[units], axis=0).shape[0] != units.shape[0]:
        raise AssertionError("discrete log table is not injective")
    return grp


# -- characters -----------------------------------------------------------

@dataclass(eq=False)
class DirichletCharacter:
    group: UnitGroupDecomposition = field(repr=False)
    exps: Tuple[int, ...]
    is_even: bool
    is_primitive: bool
    is_real: bool
    is_trivial: bool

    @property
    def q(self) -> int:
        return self.group.q

    @property
    def M(self) -> int:
        return self.group.M

    def _scale(self) -> np.ndarray:
        L = self.group.exponent_lcm
        return np.array([a * (L // o) for a, o in zip(self.exps, self.group.orders)], dtype=np.int64)

    def rotation_numerators(self) -> np.ndarray:
        """num[r] with chi(r) = e^{2 pi i num/L}; -1 at non-units."""
        L = self.group.exponent_lcm
        num = (self.group.dlog @ self._scale()) % L
        num[np.arange(num.shape[0]) % self.q == 0] = -1
        return num

    def rotation(self, f: Poly) -> Optional[Fraction]:
        r = residue_of(f, self.M)
        if r % self.q == 0:
            return None
        return Fraction(int(self.group.dlog[r] @ self._scale()) % self.group.exponent_lcm,
                        self.group.exponent_lcm)

    def value(self, f: Poly) -> complex:
        t = self.rotation(f)
        return 0j if t is None else complex(np.exp(2j * np.pi * float(t)))

    def values(self) -> np.ndarray:
        """chi at every residue mod T^M (0 at non-units)."""
        num = self.rotation_numerators()
        out = np.exp(2j * np.pi * num / self.group.exponent_lcm)
        out[num < 0] = 0
        return out

    def sum_over_monics(self, weights: np.ndarray, n: int) -> complex:
        return complex(np.dot(weights, self.values()[monic_residues(self.q, n, self.M)]))

    def to_json(self) -> dict:
        return {"chi": list(self.exps), "even": self.is_even, "primitive": self.is_primitive,
                "real": self.is_real, "trivial": self.is_trivial}


@dataclass(eq=False)
class CharacterFamily:
    group: UnitGroupDecomposition
    chars: List[DirichletCharacter]
    exps: np.ndarray          # (count, r) in C order over the group shape

    def mask(self, even=None, primitive=None, real=None, trivial=None) -> np.ndarray:
        m = np.ones(len(self.chars), dtype=bool)
        for attr, want in (("is_even", even), ("is_primitive", primitive),
                           ("is_real", real), ("is_trivial", trivial)):
            if want is not None:
                m &= np.array([getattr(c, attr) == want for c in self.chars])
        return m

    def select(self, **kw) -> List[DirichletCharacter]:
        return [c for c, keep in zip(self.chars, self.mask(**kw)) if keep]

    def residue_weights(self, weights: np.ndarray, n: int) -> np.ndarray:
        q, M = self.group.q, self.group.M
        return np.bincount(monic_residues(q, n, M), weights=np.asarray(weights, dtype=float),
                           minlength=q**M)

    def bulk_sums(self, weights: np.ndarray, n: int) -> np.ndarray:
        """sum_{f in M_n} w(f) chi(f) for every character, by one FFT."""
        return self.sums_from_residues(self.residue_weights(weights, n))

    def sums_from_residues(self, W: np.ndarray) -> np.ndarray:
        grp = self.group
        units = grp.units()
        if not grp.orders:
            return np.array([W[units].sum()], dtype=complex)
        G = np.zeros(tuple(grp.orders), dtype=complex)
        np.add.at(G, tuple(grp.dlog[units].T), W[units])
        return (np.fft.ifftn(G) * G.size).ravel()

    def direct_sums(self, weights: np.ndarray, n: int, which: Optional[Sequence[int]] = None) -> np.ndarray:
        idx = range(len(self.chars)) if which is None else which
        return np.array([self.chars[i].sum_over_monics(weights, n) for i in idx])


def _phi_counts(q: int, M: int):
    return {
        "all": q ** (M - 1) * (q - 1),
        "primitive": q ** (M - 2) * (q - 1) ** 2,
        "even": q ** (M - 1),
        "even_primitive": q ** (M - 2) * (q - 1),
    }


@lru_cache(maxsize=None)
def characters(q: int, M: int) -> CharacterFamily:
    """Every character mod T^M, classified by scanning its values."""
    grp = unit_group(q, M)
    r = len(grp.orders)
    if r:
        exps = np.indices(tuple(grp.orders)).reshape(r, -1).T.astype(np.int64)
    else:
        exps = np.zeros((1, 0), dtype=np.int64)
    L = grp.exponent_lcm
    scale = exps * np.array([L // o for o in grp.orders], dtype=np.int64) if r else exps
    units = grp.units()
    consts = np.arange(1, q)
    top = 1 + q ** (M - 1) * np.arange(q) if M >= 2 else units
    chars = []
    for start in range(0, exps.shape[0], 256):
        block = (grp.dlog[units] @ scale[start:start + 256].T) % L   # (units, chunk)
        pos = np.searchsorted(units, consts)
        even = (block[pos] == 0).all(axis=0)
        prim = (block[np.searchsorted(units, top)] != 0).any(axis=0)
        real = ((2 * block) % L == 0).all(axis=0)
        trivial = (block == 0).all(axis=0)
        for j in range(block.shape[1]):
            chars.append(DirichletCharacter(grp, tuple(int(x) for x in exps[start + j]),
                                            bool(even[j]), bool(prim[j]), bool(real[j]), bool(trivial[j])))
    fam = CharacterFamily(grp, chars, exps)
    got = {
        "all": len(chars),
        "primitive": int(fam.mask(primitive=True).sum()),
        "even": int(fam.mask(even=True).sum()),
        "even_primitive": int(fam.mask(even=True, primitive=True).sum()),
    }
    want = _phi_counts(q, M)
    checks = ("all",) if M < 2 else tuple(want)
    for key in checks:
        if got[key] != want[key]:
            raise CountMismatch(f"{key} characters mod T^{M} over F_{q}: {got[key]} != {want[key]}")
    return fam


def real_character_count(q: int, M: int, nontrivial: bool = True) -> int:
    fam = characters(q, M)
    return int(fam.mask(real=True, trivial=False if nontrivial else None).sum())


# -- L-polynomials ----------------------------------------------------------

@dataclass
class LFunctionData:
    q: int
    M: int
    chi: Tuple[int, ...]
    even: bool
    primitive: bool
    coeffs: List[complex]
    top_coeff: complex          # sum over M_M; must vanish
    zeros: List[complex]
    lambda_chi: int
    theta_angles: List[float]
    N: Optional[int]

    def eigenvalues(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.asarray(self.theta_angles))

    def to_json(self) -> dict:
        return {"q": self.q, "M": self.M, "chi": list(self.chi), "even": self.even,
                "primitive": self.primitive,
                "coeffs": [[c.real, c.imag] for c in self.coeffs],
                "thetas": list(self.theta_angles), "lambda_chi": self.lambda_chi}


def _polish(coeffs: np.ndarray, roots: np.ndarray, steps: int = 3) -> np.ndarray:
    p = np.poly1d(coeffs[::-1])
    dp = p.deriv()
    out = roots.astype(complex)
    for _ in range(steps):
        d = dp(out)
        safe = np.abs(d) > 0
        out[safe] = out[safe] - p(out[safe]) / d[safe]
    return out


def analyze_l_coefficients(coeffs: Sequence[complex], q: int, M: int, chi: Tuple[int, ...],
                           even: bool, primitive: bool, top: complex = 0j,
                           polish: bool = False) -> LFunctionData:
    c = np.asarray(coeffs, dtype=complex)
    scale = max(1.0, float(np.abs(c).max()))
    deg = max((i for i in range(len(c)) if abs(c[i]) > config.COEFF_ZERO_TOL * scale), default=0)
    zeros = np.roots(c[:deg + 1][::-1]) if deg else np.zeros(0, dtype=complex)
    if polish and deg:
        zeros = _polish(c[:deg + 1], zeros)
    if abs(top) > config.COEFF_ZERO_TOL * scale * q ** (M / 2):
        raise LFunctionError(f"degree-{M} coefficient {top} does not vanish")
    lam, thetas, N = 0, [], None
    if primitive:
        at_one = np.abs(zeros - 1) < config.ROOT_TOL
        lam = int(at_one.sum())
        if lam != (1 if even else 0):
            raise LFunctionError(f"character {chi}: {lam} zeros at u=1 (even={even})")
        rest = zeros[~at_one]
        off = np.abs(np.abs(rest) - q ** -0.5)
        N = M - 1 - lam
        if rest.shape[0] != N or (off >= config.ROOT_TOL).any():
            raise LFunctionError(f"character {chi}: expected {N} zeros on |u|=q^-1/2, got {np.abs(rest)}")
        # x % 1.0 rounds to 1.0 for tiny negative x
        thetas = sorted(float((-np.angle(u) / (2 * np.pi)) % 1.0) % 1.0 for u in rest)
    return LFunctionData(q, M, tuple(chi), even, primitive, [complex(x) for x in c], complex(top),
                         [complex(z) for z in zeros], lam, thetas, N)


def l_polynomial(chi: DirichletCharacter, polish: bool = False) -> LFunctionData:
    if chi.is_trivial:
        raise ValueError("the trivial character is excluded")
    q, M = chi.q, chi.M
    vals = chi.values()
    coeffs = [complex(vals[monic_residues(q, n, M)].sum()) for n in range(M)]
    top = complex(vals[monic_residues(q, M, M)].sum())
    return analyze_l_coefficients(coeffs, q, M, chi.exps, chi.is_even, chi.is_primitive, top, polish)


@lru_cache(maxsize=None)
def family_l_data(q: int, M: int, polish: bool = False) -> Tuple[LFunctionData, ...]:
    """L-data of every nontrivial character, coefficients by bulk FFT."""
    fam = characters(q, M)
    cols = [fam.bulk_sums(np.ones(q**n), n) for n in range(M + 1)]
    out = []
    for i, chi in enumerate(fam.chars):
        if chi.is_trivial:
            continue
        out.append(analyze_l_coefficients([cols[n][i] for n in range(M)], q, M, chi.exps,
                                          chi.is_even, chi.is_primitive, cols[M][i], polish))
    return tuple(out)


# -- explicit formula, Schur of zeros, family averages ----------------------

def _von_mangoldt_weights(q: int, n: int) -> np.ndarray:
    w, den = values_on_monics(named("lambda"), q, n)
    return w / den


def explicit_formula_rhs(data: LFunctionData, n: int) -> complex:
    return complex(-data.q ** (n / 2) * (data.eigenvalues() ** n).sum() - data.lambda_chi)


def explicit_formula_check(chi: DirichletCharacter, n: int) -> float:
    if not chi.is_primitive or chi.is_trivial:
        raise ValueError("needs a primitive nontrivial character")
    if n < 1:
        raise ValueError("n must be positive")
    lhs = chi.sum_over_monics(_von_mangoldt_weights(chi.q, n), n)
    return abs(lhs - explicit_formula_rhs(l_polynomial(chi), n))


def family_explicit_formula_residuals(q: int, M: int, nmax: int, even: Optional[bool] = True) -> np.ndarray:
    """Residuals (chars x n) across primitive characters, n = 1..nmax."""
    fam = characters(q, M)
    data = {d.chi: d for d in family_l_data(q, M)}
    sel = [i for i, c in enumerate(fam.chars)
           if c.is_primitive and not c.is_trivial and (even is None or c.is_even == even)]
    out = np.zeros((len(sel), nmax))
    for n in range(1, nmax + 1):
        sums = fam.bulk_sums(_von_mangoldt_weights(q, n), n)
        for row, i in enumerate(sel):
            out[row, n - 1] = abs(sums[i] - explicit_formula_rhs(data[fam.chars[i].exps], n))
    return out


def _character_weights(lam: Partition, q: int) -> np.ndarray:
    w, den = values_on_monics(named("char_X", *lam), q, sum(lam))
    return w / den


def schur_of_zeros_residual(data: LFunctionData, lam: Partition, char_sum: complex) -> float:
    n = sum(lam)
    lhs = schur_eval(lam, list(data.eigenvalues()))
    return abs(lhs - (-1) ** n * data.q ** (-n / 2) * char_sum)


def schur_of_zeros_check(chi: DirichletCharacter, lam: Partition) -> float:
    if not (chi.is_primitive and chi.is_even) or chi.is_real:
        raise ValueError("needs a primitive even character with chi^2 != chi_0")
    lam = tuple(lam)
    s = chi.sum_over_monics(_character_weights(dual(lam), chi.q), sum(lam))
    return schur_of_zeros_residual(l_polynomial(chi), lam, s)


def family_schur_of_zeros(q: int, M: int, lam: Partition) -> np.ndarray:
    """Residuals over primitive even characters with chi^2 != chi_0."""
    lam = tuple(lam)
    fam = characters(q, M)
    data = {d.chi: d for d in family_l_data(q, M)}
    sums = fam.bulk_sums(_character_weights(dual(lam), q), sum(lam))
    return np.array([schur_of_zeros_residual(data[c.exps], lam, sums[i])
                     for i, c in enumerate(fam.chars)
                     if c.is_primitive and c.is_even and not c.is_real])


def family_delta(lam: Partition, nu: Partition, q: int, m: int) -> complex:
    """Average over primitive even chi mod T^m of the paired character sums
    of X^lam and X^nu over M_n, divided by q^n."""
    lam, nu = tuple(lam), tuple(nu)
    n = sum(lam)
    if sum(nu) != n:
        raise ValueError("lam and nu must have the same weight")
    if m < 5:
        raise ValueError("m must be at least 5")
    fam = characters(q, m)
    sel = fam.mask(primitive=True, even=True)
    a = fam.bulk_sums(_character_weights(lam, q), n)[sel]
    b = a if nu == lam else fam.bulk_sums(_character_weights(nu, q), n)[sel]
    return complex(np.mean(a * np.conj(b)) / q**n)


def family_delta_target(lam: Partition, nu: Partition, m: int) -> int:
    return int(tuple(lam) == tuple(nu) and lam[0] <= m - 2)


# -- exact short-interval identity ------------------------------------------

@dataclass
class IdentityCheck:
    lhs: Fraction
    rhs: float
    residual: float
    relative: float

    @property
    def ok(self) -> bool:
        return self.relative <= config.IDENTITY_REL_TOL


def short_interval_identity_check(a: FactorizationFunction, q: int, n: int, h: int) -> IdentityCheck:
    """Both sides of the interval/character identity for sums restricted to
    monics prime to T, centred by their mean over those monics.

    Left: sum over f in M_n of the squared centred interval sum (exact).
    Right: q^{h+1}(q-1)/Phi(T^{n-h}) times the sum over nontrivial even
    chi mod T^{n-h} of |sum_{g in M_n} a(g) chi(g)|^2.
    """
    if not 0 <= h <= n - 1:
        raise ValueError("need 0 <= h <= n-1")
    ints, den = values_on_monics(a, q, n)
    vals = [int(v) for v in ints]
    width = q ** (h + 1)
    coprime = [v if i % q else 0 for i, v in enumerate(vals)]
    mean = Fraction(sum(coprime), q ** (n - 1) * (q - 1))
    per_interval = q**h * (q - 1)
    lhs = Fraction(0)
    for start in range(0, q**n, width):
        s = sum(coprime[start:start + width]) - per_interval * mean
        lhs += width * s * s
    lhs /= den * den

    M = n - h
    fam = characters(q, M)
    sums = fam.bulk_sums(np.asarray(ints, dtype=float), n)
    sel = fam.mask(even=True, trivial=False)
    phi = q ** (M - 1) * (q - 1)
    rhs = float(q ** (h + 1) * (q - 1) / phi * np.sum(np.abs(sums[sel]) ** 2)) / den**2
    resid = abs(float(lhs) - rhs)
    rel = resid / max(abs(float(lhs)), abs(rhs), 1.0)
    return IdentityCheck(lhs, rhs, resid, rel)
