"""Report emission.  Floats are written with repr so every value round-trips."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .runner import CSV_COLUMNS


def emit_json(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def parse_json(text: str) -> dict:
    return json.loads(text)


def emit_csv(rows, columns=CSV_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(float(v)) for v in r])
    return buf.getvalue()


def parse_csv(text: str) -> tuple:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return tuple(header), [[float(v) for v in r] for r in reader]


def write_outputs(outdir, name: str, report: dict, rows) -> tuple:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    jp, cp = out / f"{name}.json", out / f"{name}.csv"
    jp.write_text(emit_json(report))
    cp.write_text(emit_csv(rows))
    return jp, cp
