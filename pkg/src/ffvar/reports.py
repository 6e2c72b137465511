"""JSON and CSV report output.

JSON documents carry ``"schema": "ffvar-report/1"``, a ``kind``, the input
``params``, a list of ``rows`` and an optional ``summary``. CSV output
writes the rows only, with the fixed column list of each kind (``COLUMNS``).
Rationals are written as ``"p/q"`` strings (plain ``"p"`` when integral).
"""
from __future__ import annotations

import csv
import json
import sys
from fractions import Fraction
from typing import IO, Any, Dict, List, Optional

import numpy as np

SCHEMA = "ffvar-report/1"

COLUMNS: Dict[str, List[str]] = {
    "coeffs": ["lambda", "value"],
    "predict": ["lambda", "sq"],
    "covariance": ["n", "h", "coefficient"],
    "ik": ["k", "n", "N", "count", "schur_side"],
    "empirical": ["q", "n", "h", "mean", "variance", "normalized", "prediction", "abs_error", "bound", "passed"],
    "moment": ["q", "n", "h", "k", "moment", "normalized", "mean_power", "relative_gap"],
    "covariance_empirical": ["q", "n", "h", "covariance", "normalized", "prediction"],
    "partial": ["q", "n", "h", "shard_index", "shards", "count", "sums", "cross"],
    "lfunc": ["chi", "even", "primitive", "real", "lambda_chi", "N", "thetas", "coeffs"],
    "family": ["lambda", "nu", "delta_re", "delta_im", "target", "abs_error"],
    "schur_zeros": ["lambda", "max_residual", "scaled"],
    "types": ["lambda", "probability", "cauchy"],
    "verify": ["check", "passed", "detail"],
}


def jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in x]
    return str(x)


def document(kind: str, params: dict, rows: List[dict], summary: Optional[dict] = None) -> dict:
    doc = {"schema": SCHEMA, "kind": kind, "params": jsonable(params), "rows": jsonable(rows)}
    if summary is not None:
        doc["summary"] = jsonable(summary)
    return doc


def _cell(v: Any) -> str:
    v = jsonable(v)
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v) if not any(isinstance(x, list) for x in v) else json.dumps(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def emit(doc: dict, fmt: str = "json", stream: IO[str] = None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        json.dump(doc, stream, indent=2)
        stream.write("\n")
        return
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    cols = COLUMNS[doc["kind"]]
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(cols)
    for row in doc["rows"]:
        w.writerow([_cell(row.get(c)) for c in cols])
