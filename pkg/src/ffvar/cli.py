"""Command-line interface: ``ffvar <command> [options]``.

Exit codes: 0 success, 1 an identity or cross-check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import List, Optional

from . import config, reports
from .arith import closed_form_expansion, fourier_coefficients, parse_function
from .dirichlet import (
    characters,
    family_delta,
    family_delta_target,
    family_l_data,
    family_schur_of_zeros,
)
from .ffpoly import Poly
from .harness import (
    PartialSums,
    compare,
    empirical_covariance,
    empirical_variance,
    moment_report,
    partial_sums,
    shift_independence,
    type_distribution,
)
from .partitions import enumerate_partitions
from .predictor import ik_count, ik_count_schur, predict_covariance, predict_variance, RangeError
from .symmetric import cauchy_probability

FAILURE_TYPES = (AssertionError,)


class UsageError(Exception):
    pass


def _partition(text: str):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ffvar", description="Short-interval variance toolkit over F_q[T].")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, q=False, n=False, h=False, fn=False):
        if q:
            sp.add_argument("--q", type=int, required=True)
        if n:
            sp.add_argument("--n", type=int, required=True)
        if h:
            sp.add_argument("--h", type=int, required=True)
        if fn:
            sp.add_argument("--fn", required=True, help="NAME[:p1,p2,...], e.g. d_k:2")
        sp.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)

    sp = sub.add_parser("coeffs", help="Fourier expansion of a named function")
    common(sp, n=True, fn=True)
    sp.add_argument("--closed-form", action="store_true", help="use the closed form instead")

    sp = sub.add_parser("predict", help="predicted variance / covariance coefficient")
    common(sp, n=True, h=True, fn=True)
    sp.add_argument("--with", dest="other", help="second function: predict the covariance")
    sp.add_argument("--relax", action="store_true", help="allow h up to n-2")

    sp = sub.add_parser("ik", help="lattice count I_k(n, N)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--shards", type=int, default=1)
    sp.add_argument("--shard-index", type=int)
    sp.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)

    sp = sub.add_parser("empirical", help="exhaustive variance / covariance / moments")
    common(sp, q=True, n=True, h=True, fn=True)
    sp.add_argument("--with", dest="other", help="second function: covariance")
    sp.add_argument("--moment", type=int, help="raw k-th moment instead of the variance")
    sp.add_argument("--shards", type=int, default=1)
    sp.add_argument("--shard-index", type=int, help="emit one shard's exact partial sums")
    sp.add_argument("--merge", nargs="+", metavar="FILE", help="reduce partial-sum reports")
    sp.add_argument("--budget", type=int, default=config.DEFAULT_BUDGET)
    sp.add_argument("--C", type=float, default=config.C_EMPIRICAL)

    sp = sub.add_parser("lfunc", help="per-character L-data")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--chi", type=_partition, help="exponent vector e1,e2,...")
    sp.add_argument("--primitive-even", action="store_true")
    sp.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)

    sp = sub.add_parser("family", help="family averages and Schur-of-zeros residuals")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--schur", action="store_true", help="Schur-of-zeros residuals instead")
    sp.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)

    sp = sub.add_parser("verify", help="run the invariant suite")
    sp.add_argument("--level", choices=("fast", "full"), default="fast")
    sp.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)

    sp = sub.add_parser("types", help="factorization-type distribution")
    common(sp, q=True, n=True)
    sp.add_argument("--alpha", help="shift polynomial, e.g. q=7:[1]; reports joint deviation")
    sp.add_argument("--budget", type=int, default=config.DEFAULT_BUDGET)
    return p


def _cmd_coeffs(a):
    fn = parse_function(a.fn)
    if a.closed_form:
        name, _, rest = a.fn.partition(":")
        exp = closed_form_expansion(name, a.n, *[x for x in rest.split(",") if x])
    else:
        exp = fourier_coefficients(fn, a.n)
    rows = [{"lambda": list(lam), "value": c} for lam, c in exp.coeffs.items()]
    return reports.document("coeffs", {"fn": a.fn, "n": a.n}, rows), 0


def _cmd_predict(a):
    fn = parse_function(a.fn)
    if a.other:
        cov = predict_covariance(fn, parse_function(a.other), a.n, a.h, relax=a.relax)
        row = {"n": a.n, "h": a.h, "coefficient": cov}
        return reports.document("covariance", {"fn": a.fn, "with": a.other, "n": a.n, "h": a.h},
                                [row], {"coefficient": cov}), 0
    pred = predict_variance(fn, a.n, a.h, relax=a.relax)
    rows = [{"lambda": list(lam), "sq": v} for lam, v in pred.contributing]
    return reports.document("predict", {"fn": a.fn, "n": a.n, "h": a.h}, rows,
                            {"coefficient": pred.leading_coeff}), 0


def _cmd_ik(a):
    if a.shard_index is not None:
        count = ik_count(a.k, a.n, a.N, a.shards, a.shard_index)
        row = {"k": a.k, "n": a.n, "N": a.N, "count": count, "schur_side": None}
        return reports.document("ik", vars_of(a), [row], {"count": count, "partial": True}), 0
    count = sum(ik_count(a.k, a.n, a.N, a.shards, i) for i in range(a.shards))
    schur = ik_count_schur(a.k, a.n, a.N)
    row = {"k": a.k, "n": a.n, "N": a.N, "count": count, "schur_side": schur}
    return reports.document("ik", vars_of(a), [row], {"count": count}), (0 if schur == count else 1)


def vars_of(a) -> dict:
    return {k: v for k, v in vars(a).items() if k not in ("command", "format")}


def _cmd_empirical(a):
    fn = parse_function(a.fn)
    params = vars_of(a)
    other = parse_function(a.other) if a.other else None
    if a.merge:
        total = PartialSums()
        for path in a.merge:
            with open(path) as fh:
                doc = json.load(fh)
            for row in doc["rows"]:
                total = total.merge(PartialSums(int(row["count"]), [int(x) for x in row["sums"]], int(row["cross"])))
        mean = Fraction(total.sums[0], total.count)
        var = Fraction(total.sums[1], total.count) - mean * mean if len(total.sums) > 1 else None
        summary = {"count": total.count, "mean_scaled": mean, "variance_scaled": var}
        return reports.document("partial", params, [], summary), 0
    if a.shard_index is not None:
        part, da, db = partial_sums(fn, a.q, a.n, a.h, 2, other, a.shards, a.shard_index)
        row = {"q": a.q, "n": a.n, "h": a.h, "shard_index": a.shard_index, "shards": a.shards,
               "count": part.count, "sums": [str(s) for s in part.sums], "cross": str(part.cross)}
        return reports.document("partial", params, [row], {"scale": [da, db]}), 0
    if a.moment is not None:
        rep = moment_report(fn, a.q, a.n, a.h, a.moment)
        return reports.document("moment", params, [rep]), 0
    if other is not None:
        cov = empirical_covariance(fn, other, a.q, a.n, a.h, shards=a.shards, budget=a.budget)
        row = {"q": a.q, "n": a.n, "h": a.h, "covariance": cov, "normalized": cov / a.q ** (a.h + 1)}
        try:
            row["prediction"] = predict_covariance(fn, other, a.n, a.h)
        except RangeError:
            row["prediction"] = None
        return reports.document("covariance_empirical", params, [row]), 0
    stats = empirical_variance(fn, a.q, a.n, a.h, shards=a.shards, budget=a.budget)
    row = {"q": a.q, "n": a.n, "h": a.h, "mean": stats.mean, "variance": stats.variance,
           "normalized": stats.normalized(), "prediction": None, "abs_error": None,
           "bound": None, "passed": None}
    try:
        pred = predict_variance(fn, a.n, a.h).leading_coeff
        err = abs(float(stats.normalized() - pred))
        bound = a.C / math.sqrt(a.q)
        row.update(prediction=pred, abs_error=err, bound=bound, passed=err <= bound)
    except RangeError:
        pass
    summary = {"note": "C is a frozen engineering constant, not a proven value", "C": a.C}
    return reports.document("empirical", params, [row], summary), 0


def _cmd_lfunc(a):
    fam = characters(a.q, a.M)
    data = {d.chi: d for d in family_l_data(a.q, a.M)}
    flags = {c.exps: c for c in fam.chars}
    if a.chi is not None:
        chis = [tuple(a.chi)]
        if chis[0] not in flags:
            raise UsageError(f"no character with exponent vector {a.chi}; group orders {fam.group.orders}")
        if chis[0] not in data:
            raise UsageError("the trivial character has no L-data")
    else:
        chis = [c.exps for c in fam.chars
                if not c.is_trivial and (not a.primitive_even or (c.is_primitive and c.is_even))]
    rows = []
    for chi in chis:
        d = data[chi]
        rows.append({"chi": list(chi), "even": d.even, "primitive": d.primitive, "real": flags[chi].is_real,
                     "lambda_chi": d.lambda_chi, "N": d.N, "thetas": d.theta_angles,
                     "coeffs": [[c.real, c.imag] for c in d.coeffs]})
    params = {"q": a.q, "M": a.M, "generators": [str(g) for g in fam.group.generators],
              "orders": fam.group.orders}
    return reports.document("lfunc", params, rows), 0


def _cmd_family(a):
    parts = enumerate_partitions(a.n)
    if a.schur:
        rows = []
        for lam in parts:
            r = family_schur_of_zeros(a.q, a.m, lam)
            mx = float(r.max()) if r.size else 0.0
            rows.append({"lambda": list(lam), "max_residual": mx, "scaled": mx * math.sqrt(a.q)})
        worst = max(r["scaled"] for r in rows)
        return reports.document("schur_zeros", vars_of(a), rows,
                                {"max_scaled": worst, "C": config.C_SCHUR_OF_ZEROS}), \
            (0 if worst <= config.C_SCHUR_OF_ZEROS else 1)
    rows = []
    for lam in parts:
        for nu in parts:
            d = family_delta(lam, nu, a.q, a.m)
            t = family_delta_target(lam, nu, a.m)
            rows.append({"lambda": list(lam), "nu": list(nu), "delta_re": d.real, "delta_im": d.imag,
                         "target": t, "abs_error": abs(d - t)})
    worst = max(r["abs_error"] for r in rows) * math.sqrt(a.q)
    return reports.document("family", vars_of(a), rows, {"max_scaled": worst, "C": config.C_FAMILY_DELTA}), \
        (0 if worst <= config.C_FAMILY_DELTA else 1)


def _cmd_verify(a):
    from .verify import run
    outcomes = run(a.level)
    rows = [{"check": o.name, "passed": o.passed, "detail": o.detail, "seconds": round(o.seconds, 3)}
            for o in outcomes]
    ok = all(o.passed for o in outcomes)
    return reports.document("verify", {"level": a.level}, rows, {"passed": ok}), (0 if ok else 1)


def _cmd_types(a):
    if a.alpha:
        alpha = Poly.parse(a.alpha)
        dev = shift_independence(a.q, a.n, alpha, budget=a.budget)
        summary = {"max_deviation": dev, "scaled": float(dev) * math.sqrt(a.q)}
        return reports.document("types", vars_of(a), [], summary), 0
    dist = type_distribution(a.q, a.n, budget=a.budget)
    rows = [{"lambda": list(lam) if lam is not None else None, "probability": p,
             "cauchy": cauchy_probability(lam) if lam is not None else 0}
            for lam, p in dist.probabilities.items()]
    return reports.document("types", vars_of(a), rows, {"tv_distance": dist.tv_distance}), 0


COMMANDS = {
    "coeffs": _cmd_coeffs, "predict": _cmd_predict, "ik": _cmd_ik, "empirical": _cmd_empirical,
    "lfunc": _cmd_lfunc, "family": _cmd_family, "verify": _cmd_verify, "types": _cmd_types,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc, code = COMMANDS[args.command](args)
    except FAILURE_TYPES as exc:
        print(f"ffvar: check failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, UsageError, OverflowError) as exc:
        print(f"ffvar: error: {exc}", file=sys.stderr)
        return 2
    reports.emit(doc, args.format)
    return code


def cli(argv: Optional[List[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
