"""Exhaustive statistics over M_n and prediction-vs-measurement reports.

Short intervals I(f; h) partition M_n by the top n-h-1 coefficients, which
in the monic index are ``idx // q^(h+1)``. Every polynomial is factored once
(by the sieve table) and interval sums come from one reshape.

Sharding splits the interval ids into contiguous blocks; partial sums are
exact integers, so the reduction is order independent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import config
from .arith import FactorizationFunction, values_on_monics
from .ffpoly import FieldSpec, Poly, is_squarefree_type
from .kernels import index_digits, monic_table
from .partitions import Partition, enumerate_partitions
from .predictor import predict_variance
from .symmetric import cauchy_probability


class BudgetExceeded(ValueError):
    pass


def check_budget(q: int, n: int, budget: Optional[int] = None) -> None:
    budget = config.DEFAULT_BUDGET if budget is None else budget
    if q**n > budget:
        raise BudgetExceeded(f"q^n = {q**n} exceeds the enumeration budget {budget}")


def _check_args(q: int, n: int, h: int):
    FieldSpec(q)
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= h <= n - 1:
        raise ValueError(f"need 0 <= h <= n-1 (n={n}, h={h})")


@dataclass
class PartialSums:
    """Exact power sums of interval sums over a block of intervals."""
    count: int = 0
    sums: List[int] = field(default_factory=list)        # sum of S^k, k = 1..K
    cross: int = 0                                        # sum of S_a S_b

    def merge(self, other: "PartialSums") -> "PartialSums":
        k = max(len(self.sums), len(other.sums))
        pad = lambda s: s + [0] * (k - len(s))
        return PartialSums(self.count + other.count,
                           [x + y for x, y in zip(pad(self.sums), pad(other.sums))],
                           self.cross + other.cross)


def interval_sums(values: np.ndarray, q: int, h: int) -> np.ndarray:
    return values.reshape(-1, q ** (h + 1)).sum(axis=1)


def shard_intervals(q: int, n: int, h: int, shards: int, index: int) -> Tuple[int, int]:
    if shards < 1 or not 0 <= index < shards:
        raise ValueError("bad shard specification")
    total = q ** (n - h - 1)
    return total * index // shards, total * (index + 1) // shards


def partial_sums(a: FactorizationFunction, q: int, n: int, h: int, K: int = 2,
                 b: Optional[FactorizationFunction] = None,
                 shards: int = 1, shard_index: int = 0) -> Tuple[PartialSums, int, int]:
    """Power sums for one shard, plus the scale denominators of a and b."""
    va, da = values_on_monics(a, q, n)
    lo, hi = shard_intervals(q, n, h, shards, shard_index)
    width = q ** (h + 1)
    sa = [int(x) for x in interval_sums(va[lo * width:hi * width], q, h)]
    out = PartialSums(len(sa), [sum(s**k for s in sa) for k in range(1, K + 1)])
    db = 1
    if b is not None:
        vb, db = values_on_monics(b, q, n)
        sb = [int(x) for x in interval_sums(vb[lo * width:hi * width], q, h)]
        out.cross = sum(x * y for x, y in zip(sa, sb))
        out.sums.append(sum(sb))     # slot K: sum of S_b
    return out, da, db


def _reduce(a, q, n, h, K, b=None, shards=1, budget=None):
    _check_args(q, n, h)
    check_budget(q, n, budget)
    total = PartialSums()
    da = db = 1
    for i in range(shards):
        part, da, db = partial_sums(a, q, n, h, K, b, shards, i)
        total = total.merge(part)
    return total, da, db


@dataclass
class EmpiricalStats:
    q: int
    n: int
    h: int
    mean: Fraction
    variance: Fraction
    size: int

    def normalized(self) -> Fraction:
        return self.variance / self.q ** (self.h + 1)


def empirical_variance(a: FactorizationFunction, q: int, n: int, h: int,
                       shards: int = 1, budget: Optional[int] = None) -> EmpiricalStats:
    """Exact mean and variance over f in M_n of the sum of a over I(f; h)."""
    tot, den, _ = _reduce(a, q, n, h, 2, shards=shards, budget=budget)
    mean = Fraction(tot.sums[0], tot.count)
    var = Fraction(tot.sums[1], tot.count) - mean * mean
    return EmpiricalStats(q, n, h, mean / den, var / (den * den), q**n)


def empirical_covariance(a: FactorizationFunction, b: FactorizationFunction, q: int, n: int, h: int,
                         shards: int = 1, budget: Optional[int] = None) -> Fraction:
    tot, da, db = _reduce(a, q, n, h, 1, b, shards, budget)
    ma = Fraction(tot.sums[0], tot.count)
    mb = Fraction(tot.sums[1], tot.count)
    return (Fraction(tot.cross, tot.count) - ma * mb) / (da * db)


def empirical_moment(a: FactorizationFunction, q: int, n: int, h: int, k: int,
                     shards: int = 1, budget: Optional[int] = None) -> Fraction:
    """Raw k-th moment of interval sums over f in M_n."""
    if k < 1:
        raise ValueError("k must be positive")
    tot, den, _ = _reduce(a, q, n, h, k, shards=shards, budget=budget)
    return Fraction(tot.sums[k - 1], tot.count) / den**k


def empirical_mean(a: FactorizationFunction, q: int, n: int) -> Fraction:
    v, den = values_on_monics(a, q, n)
    return Fraction(int(v.sum()), q**n * den)


def moment_report(a: FactorizationFunction, q: int, n: int, h: int, k: int) -> dict:
    mom = empirical_moment(a, q, n, h, k)
    normalized = mom / q ** (k * (h + 1))
    target = empirical_mean(a, q, n) ** k
    return {"q": q, "n": n, "h": h, "k": k, "moment": mom, "normalized": normalized,
            "mean_power": target, "relative_gap": abs(float(normalized - target)) / max(abs(float(target)), 1e-300)}


# -- factorization-type statistics --------------------------------------------

def _type_labels(q: int, n: int) -> Tuple[List[Optional[Partition]], np.ndarray]:
    tab = monic_table(q, n)
    labels = [tuple(m for m, _ in t) if is_squarefree_type(t) else None for t in tab.types]
    return labels, tab.types_of_degree(n)


@dataclass
class TypeDistribution:
    q: int
    n: int
    probabilities: Dict[Optional[Partition], Fraction]
    tv_distance: Fraction


def type_distribution(q: int, n: int, budget: Optional[int] = None) -> TypeDistribution:
    """Empirical law of the factorization type on M_n; squareful mass under None."""
    FieldSpec(q)
    check_budget(q, n, budget)
    labels, tids = _type_labels(q, n)
    counts = np.bincount(tids, minlength=len(labels))
    probs: Dict[Optional[Partition], Fraction] = {lam: Fraction(0) for lam in enumerate_partitions(n)}
    probs[None] = Fraction(0)
    for t, c in enumerate(counts):
        if c and sum(m * e for m, e in monic_table(q, n).types[t]) == n:
            probs[labels[t]] += Fraction(int(c), q**n)
    tv = Fraction(1, 2) * (sum(abs(probs[lam] - cauchy_probability(lam)) for lam in enumerate_partitions(n))
                           + probs[None])
    return TypeDistribution(q, n, probs, tv)


def squarefree_count(q: int, n: int) -> int:
    labels, tids = _type_labels(q, n)
    sf = np.array([lab is not None for lab in labels])
    return int(sf[tids].sum())


def shift_independence(q: int, n: int, alpha: Poly, budget: Optional[int] = None) -> Fraction:
    """Max over partition pairs of |P(type f = lam, type f+alpha = nu) - p(lam) p(nu)|."""
    FieldSpec(q)
    if alpha.q != q:
        raise ValueError("alpha lives over a different field")
    if not alpha.is_zero() and alpha.degree >= n:
        raise ValueError("need deg alpha < n")
    check_budget(q, n, budget)
    labels, tids = _type_labels(q, n)
    idx = np.arange(q**n, dtype=np.int64)
    shift = np.zeros(n, dtype=np.int64)
    shift[:len(alpha.coeffs)] = alpha.coeffs
    digs = (index_digits(idx, q, n) + shift) % q
    shifted = digs @ (q ** np.arange(n, dtype=np.int64))
    parts = enumerate_partitions(n)
    pos = {lam: i for i, lam in enumerate(parts)}
    code = np.array([pos.get(lab, -1) if lab is not None else -1 for lab in labels])
    c1, c2 = code[tids], code[tids[shifted]]
    keep = (c1 >= 0) & (c2 >= 0)
    P = len(parts)
    joint = np.bincount(c1[keep] * P + c2[keep], minlength=P * P).reshape(P, P)
    worst = Fraction(0)
    for i, lam in enumerate(parts):
        for j, nu in enumerate(parts):
            dev = abs(Fraction(int(joint[i, j]), q**n) - cauchy_probability(lam) * cauchy_probability(nu))
            worst = max(worst, dev)
    return worst


# -- comparison against the predictor ------------------------------------------

@dataclass
class ComparisonRow:
    q: int
    empirical_normalized: Fraction
    abs_error: float
    bound: float
    passed: bool


@dataclass
class ComparisonReport:
    function: str
    n: int
    h: int
    prediction: Fraction
    C: float
    rows: List[ComparisonRow]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def errors(self) -> List[float]:
        return [r.abs_error for r in self.rows]

    def decreasing(self) -> bool:
        e = self.errors
        return all(x >= y for x, y in zip(e, e[1:]))


def compare(a: FactorizationFunction, n: int, h: int, qs: Sequence[int], C: float = config.C_EMPIRICAL,
            relax: bool = False, shards: int = 1, budget: Optional[int] = None) -> ComparisonReport:
    pred = predict_variance(a, n, h, relax=relax).leading_coeff
    rows = []
    for q in qs:
        emp = empirical_variance(a, q, n, h, shards=shards, budget=budget).normalized()
        err = abs(float(emp - pred))
        bound = C / math.sqrt(q)
        rows.append(ComparisonRow(q, emp, err, bound, err <= bound))
    return ComparisonReport(a.name, n, h, pred, C, rows)
