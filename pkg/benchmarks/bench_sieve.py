"""Time the factorization-type sieve: compiled kernel against the numpy path.

    python benchmarks/bench_sieve.py --q 13 --n 5 --repeat 3

The first compiled call includes numba's compile time, reported separately.
"""
import argparse
import time

import numpy as np

from ffvar._jit import JIT_ENABLED
from ffvar.kernels import MonicTable


def timed(q, n, use_jit, repeat):
    best = float("inf")
    tab = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        tab = MonicTable(q, n, use_jit=use_jit)
        best = min(best, time.perf_counter() - t0)
    return best, tab


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--q", type=int, default=13)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)

    print(f"q={args.q} n={args.n}: {args.q ** args.n} monic polynomials of top degree")
    t_np, tab_np = timed(args.q, args.n, False, args.repeat)
    print(f"numpy   best of {args.repeat}: {t_np:8.3f} s")
    if not JIT_ENABLED:
        print("numba disabled (FFVAR_DISABLE_JIT or missing numba); skipping the compiled path")
        return 0
    t0 = time.perf_counter()
    MonicTable(2, 2, use_jit=True)
    print(f"numba   compile warm-up:  {time.perf_counter() - t0:8.3f} s")
    t_jit, tab_jit = timed(args.q, args.n, True, args.repeat)
    print(f"numba   best of {args.repeat}: {t_jit:8.3f} s   speed-up x{t_np / t_jit:.1f}")
    same = all(np.array_equal(tab_np.spf_idx[k], tab_jit.spf_idx[k]) and
               np.array_equal(tab_np.cof[k], tab_jit.cof[k]) for k in range(args.n + 1))
    print("tables identical" if same else "TABLES DIFFER")
    return 0 if same else 1


if __name__ == "__main__":
    raise SystemExit(main())
