"""Bulk factorization of every monic polynomial of degree <= n over F_q.

Monics of degree k are indexed by ``sum(a_i * q**i for i < k)`` (constant
term fastest, leading 1 implicit). For each degree the sieve records the
smallest prime factor, processed in (degree, index) order, and the cofactor.
Extended factorization types then follow by a recursion on the cofactor.

The sieve's inner loop (multiply one prime by every monic of the
complementary degree) has a numba kernel and a vectorised numpy kernel;
``FFVAR_DISABLE_JIT=1`` selects the numpy one. Both give identical tables.
"""
from __future__ import annotations

from typing import Dict, List, Tuple

import numpy as np

from ._jit import JIT_ENABLED, njit

ExtFactType = Tuple[Tuple[int, int], ...]

_CHUNK_ROWS = 1 << 20


def index_digits(idx: np.ndarray, q: int, k: int) -> np.ndarray:
    """Coefficient matrix (len(idx), k) of the low k coefficients."""
    idx = np.asarray(idx, dtype=np.int64)
    out = np.empty((idx.shape[0], k), dtype=np.int64)
    rest = idx.copy()
    for i in range(k):
        out[:, i] = rest % q
        rest //= q
    return out


@njit(cache=True)
def _mark_multiples_jit(q, k, d, primes, spf_deg, spf_idx, cof):
    m = k - d
    nq = 1
    for _ in range(m):
        nq *= q
    pcoef = np.empty(d + 1, dtype=np.int64)
    gcoef = np.empty(m + 1, dtype=np.int64)
    prod = np.empty(k + 1, dtype=np.int64)
    for t in range(primes.shape[0]):
        p = primes[t]
        rest = p
        for i in range(d):
            pcoef[i] = rest % q
            rest //= q
        pcoef[d] = 1
        for g in range(nq):
            rest = g
            for i in range(m):
                gcoef[i] = rest % q
                rest //= q
            gcoef[m] = 1
            for i in range(k + 1):
                prod[i] = 0
            for i in range(d + 1):
                pi = pcoef[i]
                if pi == 0:
                    continue
                for j in range(m + 1):
                    prod[i + j] += pi * gcoef[j]
            target = 0
            scale = 1
            for i in range(k):
                target += (prod[i] % q) * scale
                scale *= q
            if spf_deg[target] == 0:
                spf_deg[target] = d
                spf_idx[target] = p
                cof[target] = g


def _mark_multiples_numpy(q, k, d, primes, spf_deg, spf_idx, cof):
    m = k - d
    nq = q**m
    pows = q ** np.arange(k, dtype=np.int64)
    gfull = np.ones((nq, m + 1), dtype=np.int64)
    if m:
        gfull[:, :m] = index_digits(np.arange(nq, dtype=np.int64), q, m)
    pfull = np.ones((primes.shape[0], d + 1), dtype=np.int64)
    pfull[:, :d] = index_digits(primes, q, d)
    best = np.full(spf_deg.shape[0], np.iinfo(np.int64).max, dtype=np.int64)
    per_chunk = max(1, _CHUNK_ROWS // nq)
    for start in range(0, primes.shape[0], per_chunk):
        pc = pfull[start:start + per_chunk]
        # prod[t, g, :] = coefficients of P_t * g
        prod = np.zeros((pc.shape[0], nq, k + 1), dtype=np.int64)
        for i in range(d + 1):
            prod[:, :, i:i + m + 1] += pc[:, i, None, None] * gfull[None, :, :]
        targets = (prod[:, :, :k] % q) @ pows
        # order key: smaller prime first, then the (unique) cofactor
        keys = (np.arange(start, start + pc.shape[0], dtype=np.int64)[:, None] * nq
                + np.arange(nq, dtype=np.int64)[None, :])
        np.minimum.at(best, targets.ravel(), keys.ravel())
    hit = (best != np.iinfo(np.int64).max) & (spf_deg == 0)
    spf_deg[hit] = d
    spf_idx[hit] = primes[best[hit] // nq]
    cof[hit] = best[hit] % nq


def mark_multiples(q, k, d, primes, spf_deg, spf_idx, cof, use_jit=None):
    use_jit = JIT_ENABLED if use_jit is None else use_jit
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    if primes.shape[0] == 0:
        return
    if use_jit:
        _mark_multiples_jit(q, k, d, primes, spf_deg, spf_idx, cof)
    else:
        _mark_multiples_numpy(q, k, d, primes, spf_deg, spf_idx, cof)


def _merge_type(d: int, e: int, cof_type: ExtFactType) -> ExtFactType:
    pairs = list(cof_type)
    if e > 1:
        pairs.remove((d, e - 1))
    pairs.append((d, e))
    return tuple(sorted(pairs, reverse=True))


class MonicTable:
    """Factorization data for all monics of degree 0..n over F_q."""

    def __init__(self, q: int, n: int, use_jit=None):
        self.q = q
        self.n = n
        self.types: List[ExtFactType] = [()]
        self._type_ids: Dict[ExtFactType, int] = {(): 0}
        self.type_id: List[np.ndarray] = [np.zeros(1, dtype=np.int32)]
        self.spf_deg: List[np.ndarray] = [np.zeros(1, dtype=np.int8)]
        self.spf_idx: List[np.ndarray] = [np.zeros(1, dtype=np.int64)]
        self.cof: List[np.ndarray] = [np.zeros(1, dtype=np.int64)]
        self.run: List[np.ndarray] = [np.zeros(1, dtype=np.int8)]
        for k in range(1, n + 1):
            self._build_degree(k, use_jit)

    def _intern(self, t: ExtFactType) -> int:
        tid = self._type_ids.get(t)
        if tid is None:
            tid = len(self.types)
            self.types.append(t)
            self._type_ids[t] = tid
        return tid

    def irreducible_indices(self, d: int) -> np.ndarray:
        return np.flatnonzero(self.spf_deg[d] == d) if d >= 1 else np.zeros(0, np.int64)

    def _build_degree(self, k, use_jit):
        q = self.q
        size = q**k
        spf_deg = np.zeros(size, dtype=np.int8)
        spf_idx = np.zeros(size, dtype=np.int64)
        cof = np.zeros(size, dtype=np.int64)
        for d in range(1, k):
            mark_multiples(q, k, d, self.irreducible_indices(d), spf_deg, spf_idx, cof, use_jit)
        prime = spf_deg == 0
        spf_deg[prime] = k
        spf_idx[prime] = np.flatnonzero(prime)
        cof[prime] = 0

        run = np.ones(size, dtype=np.int8)
        tids = np.zeros(size, dtype=np.int32)
        for d in range(1, k + 1):
            sel = np.flatnonzero(spf_deg == d)
            if sel.size == 0:
                continue
            c = cof[sel]
            if d < k:
                same = (self.spf_deg[k - d][c] == d) & (self.spf_idx[k - d][c] == spf_idx[sel])
                run[sel] = np.where(same, self.run[k - d][c] + 1, 1)
            cof_t = self.type_id[k - d][c].astype(np.int64)
            base = len(self.types) + 1
            key = run[sel].astype(np.int64) * base + cof_t
            uniq, inv = np.unique(key, return_inverse=True)
            ids = np.empty(uniq.shape[0], dtype=np.int32)
            for u, kv in enumerate(uniq):
                e, ct = divmod(int(kv), base)
                ids[u] = self._intern(_merge_type(d, e, self.types[ct]))
            tids[sel] = ids[inv.ravel()]
        self.spf_deg.append(spf_deg)
        self.spf_idx.append(spf_idx)
        self.cof.append(cof)
        self.run.append(run)
        self.type_id.append(tids)

    def types_of_degree(self, k: int) -> np.ndarray:
        return self.type_id[k]

    def evaluate(self, func, k: int) -> np.ndarray:
        """Integer array of ``func`` on every monic of degree k.

        ``func`` maps an extended type to an int/Fraction; it must be
        integer-valued (scale rational functions first).
        """
        present = np.unique(self.type_id[k])
        table = np.zeros(len(self.types), dtype=object)
        for t in present:
            v = func(self.types[t])
            if getattr(v, "denominator", 1) != 1:
                raise ValueError("evaluate() needs integer values; scale first")
            table[t] = int(v)
        vals = table[self.type_id[k]]
        try:
            return vals.astype(np.int64)
        except OverflowError:  # pragma: no cover
            return vals


_TABLES: Dict[Tuple[int, int], MonicTable] = {}


def monic_table(q: int, n: int) -> MonicTable:
    """Cached table; a table for a larger n serves smaller requests."""
    for (qq, nn), tab in _TABLES.items():
        if qq == q and nn >= n:
            return tab
    tab = MonicTable(q, n)
    _TABLES[(q, n)] = tab
    return tab


def clear_cache():
    _TABLES.clear()
