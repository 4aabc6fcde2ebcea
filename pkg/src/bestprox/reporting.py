"""Trace CSV and JSON certificate export. Files are written atomically."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile

TRACE_COLUMNS = ("n", "coordinates", "step", "proximal_residual", "apriori_bound",
                 "aposteriori_bound")


def _num(v) -> str:
    return "" if v is None else repr(float(v))


def _coords(p) -> str:
    if isinstance(p, int):
        return str(p)
    return ";".join(repr(float(c)) for c in p)


def trace_rows(trace):
    """Row n describes x_n; step/residual/bounds refer to the move x_{n-1} -> x_n."""
    apriori = trace.apriori
    apost = trace.aposteriori
    for n, p in enumerate(trace.points):
        prev = n - 1
        yield {
            "n": n,
            "coordinates": _coords(p),
            "step": "" if n == 0 else _num(trace.steps[prev]),
            "proximal_residual": "" if n == 0 else _num(trace.residuals[prev]),
            "apriori_bound": _num(apriori[n]) if apriori else "",
            "aposteriori_bound": "" if n == 0 else _num(apost[prev]),
        }


def trace_csv(trace) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=TRACE_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(trace_rows(trace))
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def atomic_write(path, text: str):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
