"""Symmetric group characters and symmetric polynomial evaluation.

Characters come from the Murnaghan-Nakayama rule, implemented on beta-sets:
removing a border strip of length r from a partition is the same as moving
one bead of its beta-set down by r, with sign given by the beads jumped.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .partitions import (
    Partition,
    contents,
    enumerate_partitions,
    gt_pattern_count,
    hook_lengths,
    to_frequency,
)


class InconsistentSchurValue(AssertionError):
    """The three formulas for s_lambda(1^k) disagree."""


def _beta_set(lam: Partition) -> tuple:
    L = len(lam)
    return tuple(lam[i] + (L - 1 - i) for i in range(L))


def _from_beta(beta) -> Partition:
    b = sorted(beta, reverse=True)
    L = len(b)
    parts = tuple(b[i] - (L - 1 - i) for i in range(L))
    return tuple(p for p in parts if p > 0)


def remove_border_strips(lam: Partition, r: int):
    """Yield ``(smaller_partition, height)`` for every removable r-strip."""
    beta = _beta_set(lam)
    bset = set(beta)
    for b in beta:
        target = b - r
        if target < 0 or target in bset:
            continue
        height = sum(1 for c in beta if target < c < b)
        yield _from_beta([target if c == b else c for c in beta]), height


@lru_cache(maxsize=None)
def _mn(lam: Partition, tau: Partition) -> int:
    if not tau:
        return 1 if not lam else 0
    r, rest = tau[0], tau[1:]
    total = 0
    for smaller, height in remove_border_strips(lam, r):
        total += (-1) ** height * _mn(smaller, rest)
    return total


def character(lam: Partition, tau: Partition) -> int:
    """Irreducible S_n character X^lam evaluated at cycle type tau."""
    lam, tau = tuple(lam), tuple(sorted(tau, reverse=True))
    if sum(lam) != sum(tau):
        raise ValueError(f"weight mismatch: |{lam}| != |{tau}|")
    return _mn(lam, tau)


@lru_cache(maxsize=None)
def character_table(n: int):
    """Rows indexed by lam, columns by tau, both in reverse-lex order."""
    parts = enumerate_partitions(n)
    return parts, tuple(tuple(character(l, t) for t in parts) for l in parts)


@lru_cache(maxsize=None)
def cauchy_probability(lam: Partition) -> Fraction:
    """Probability that a uniform permutation has cycle type ``lam``."""
    if not lam:
        raise ValueError("cauchy_probability needs a nonempty partition")
    denom = 1
    for i, m in to_frequency(lam).items():
        denom *= i**m * math.factorial(m)
    return Fraction(1, denom)


def centralizer_order(lam: Partition) -> int:
    return cauchy_probability(lam).denominator


def power_sum_eval(nu: Partition, points: Sequence):
    out = 1
    for part in nu:
        out *= sum(x**part for x in points)
    return out


def complete_homogeneous(points: Sequence, kmax: int) -> list:
    """h_0..h_kmax via Newton's identities k h_k = sum_i p_i h_{k-i}.

    Exact for Fraction/int inputs, floating for complex ones.
    """
    exact = all(isinstance(x, (int, Fraction)) for x in points)
    p = [None] + [sum(x**i for x in points) for i in range(1, kmax + 1)]
    h = [Fraction(1) if exact else 1.0 + 0j]
    for k in range(1, kmax + 1):
        acc = sum(p[i] * h[k - i] for i in range(1, k + 1))
        h.append(acc / k)
    return h


def _det_exact(mat):
    # plain Gaussian elimination over Fractions
    m = [list(map(Fraction, row)) for row in mat]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for cc in range(c, n):
                m[r][cc] -= f * m[c][cc]
    return det


def schur_eval(lam: Partition, points: Sequence):
    """s_lam at ``points`` by Jacobi-Trudi, safe at repeated points."""
    m = len(points)
    lam = tuple(lam)
    if len(lam) > m:
        return 0
    if not lam:
        return 1
    L = len(lam)
    h = complete_homogeneous(points, lam[0] + L)
    exact = all(isinstance(x, (int, Fraction)) for x in points)
    zero = Fraction(0) if exact else 0j

    def hk(k):
        return h[k] if k >= 0 else zero

    mat = [[hk(lam[i] - i + j) for j in range(L)] for i in range(L)]
    if exact:
        return _det_exact(mat)
    return complex(np.linalg.det(np.array(mat, dtype=complex)))


def schur_bialternant(lam: Partition, points: Sequence) -> complex:
    """Ratio of alternants; only meaningful at distinct points."""
    m = len(points)
    if len(lam) > m:
        return 0j
    padded = tuple(lam) + (0,) * (m - len(lam))
    x = np.asarray(points, dtype=complex)
    num = np.array([[xi ** (padded[j] + m - 1 - j) for j in range(m)] for xi in x])
    den = np.array([[xi ** (m - 1 - j) for j in range(m)] for xi in x])
    return complex(np.linalg.det(num) / np.linalg.det(den))


def schur_ones_product(lam: Partition, k: int) -> Fraction:
    padded = tuple(lam) + (0,) * (k - len(lam))
    out = Fraction(1)
    for i in range(k):
        for j in range(i + 1, k):
            out *= Fraction(padded[i] - padded[j] + j - i, j - i)
    return out


def schur_ones_hook_content(lam: Partition, k: int) -> Fraction:
    hooks = hook_lengths(lam)
    cont = contents(lam)
    out = Fraction(1)
    for cell, hk in hooks.items():
        out *= Fraction(k + cont[cell], hk)
    return out


@lru_cache(maxsize=None)
def schur_ones(lam: Partition, k: int) -> Fraction:
    """s_lam(1,...,1) with k ones, from three formulas that must agree."""
    if k < 1:
        raise ValueError("k must be positive")
    lam = tuple(lam)
    if len(lam) > k:
        return Fraction(0)
    prod = schur_ones_product(lam, k)
    gt = Fraction(gt_pattern_count(lam, k))
    hc = schur_ones_hook_content(lam, k)
    if not (prod == gt == hc):
        raise InconsistentSchurValue(
            f"s_{lam}(1^{k}): product={prod} GT={gt} hook-content={hc}"
        )
    return prod


def frobenius_check(lam: Partition, points: Sequence) -> float:
    """Max residual of both Frobenius identities at ``points``.

    Checks s_lam = sum_nu p(nu) X^lam(nu) p_nu, and p_nu = sum X^mu(nu) s_mu
    with nu = lam read as a cycle type.
    """
    if not points:
        raise ValueError("need at least one point")
    n = sum(lam)
    parts = enumerate_partitions(n)
    pts = [complex(x) for x in points]
    s = {mu: schur_eval(mu, pts) for mu in parts}
    p = {nu: power_sum_eval(nu, pts) for nu in parts}
    lhs1 = s[tuple(lam)]
    rhs1 = sum(float(cauchy_probability(nu)) * character(lam, nu) * p[nu] for nu in parts)
    nu = tuple(lam)
    rhs2 = sum(character(mu, nu) * s[mu] for mu in parts)
    return max(abs(lhs1 - rhs1), abs(p[nu] - rhs2))


def dual_sign(tau: Partition) -> int:
    """(-1)^(n - l(tau)), the sign relating X^lam' and X^lam."""
    return (-1) ** (sum(tau) - len(tau))
