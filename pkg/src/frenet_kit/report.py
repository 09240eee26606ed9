"""CSV and JSON encodings of per-sample curvature reports.

Both formats carry the same values. Floats are written so that parsing them
back gives the identical double (17 significant digits in CSV, ``repr`` in
JSON). Undefined values are empty CSV cells and JSON ``null``.
"""

import csv
import io
import json
from dataclasses import dataclass
from typing import List, Optional, Sequence

SCHEMA = "frenet-kit/1"

__all__ = ["SCHEMA", "SampleRow", "columns", "emit_csv", "emit_json", "parse_csv"]


@dataclass
class SampleRow:
    t: float
    order: int
    kappas: List[Optional[float]]          # length n - 1, None where undefined
    det_a: Optional[float]
    minors: List[Optional[float]]          # length n
    delta_qr: Optional[float] = None
    delta_oracle: Optional[float] = None
    frame: Optional[List[List[float]]] = None   # [T, N_1, ..., N_{n-1}]


def columns(n, verify=False, frames=False):
    cols = ["t", "order"]
    cols += [f"kappa{i}" for i in range(1, n)]
    cols += ["detA"] + [f"detM{i}" for i in range(1, n + 1)]
    if verify:
        cols += ["delta_qr", "delta_oracle"]
    if frames:
        names = ["T"] + [f"N{i}" for i in range(1, n)]
        cols += [f"{v}_{j}" for v in names for j in range(1, n + 1)]
    return cols


def _record(row, n, verify, frames):
    rec = {"t": row.t, "order": row.order}
    for i in range(1, n):
        rec[f"kappa{i}"] = row.kappas[i - 1] if i - 1 < len(row.kappas) else None
    rec["detA"] = row.det_a
    for i in range(1, n + 1):
        rec[f"detM{i}"] = row.minors[i - 1] if row.minors else None
    if verify:
        rec["delta_qr"] = row.delta_qr
        rec["delta_oracle"] = row.delta_oracle
    if frames:
        rec["frame"] = row.frame
    return rec


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    return format(v, ".17g")


def emit_csv(rows: Sequence[SampleRow], n, verify=False, frames=False):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    base = columns(n, verify)
    w.writerow(columns(n, verify, frames))
    for row in rows:
        rec = _record(row, n, verify, False)
        cells = [_cell(rec[c]) for c in base]
        if frames:
            if row.frame is None:
                cells += [""] * (n * n)
            else:
                cells += [_cell(x) for vec in row.frame for x in vec]
        w.writerow(cells)
    return buf.getvalue().encode()


def emit_json(rows: Sequence[SampleRow], n, verify=False, frames=False,
              curve=None):
    doc = {
        "schema": SCHEMA,
        "n": n,
        "curve": curve,
        "samples": [_record(r, n, verify, frames) for r in rows],
    }
    return (json.dumps(doc, indent=1, allow_nan=False) + "\n").encode()


def parse_csv(data):
    """Read an emitted CSV back into a list of dicts of floats/ints/None."""
    text = data.decode() if isinstance(data, bytes) else data
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        parsed = {}
        for k, v in rec.items():
            if v == "":
                parsed[k] = None
            elif k == "order":
                parsed[k] = int(v)
            else:
                parsed[k] = float(v)
        out.append(parsed)
    return out
