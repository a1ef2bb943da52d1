"""Parameter sweeps on a bounded process pool."""
from __future__ import annotations

import csv
import itertools
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, dump, from_dict, with_override
from .report import write_outputs
from .runner import run

log = logging.getLogger(__name__)

WORKERS_ENV = "GCH_WORKERS"


def parse_axis(spec: str) -> tuple:
    """'ic.a=0.1,0.2' or 'ic.a=0.1:0.5:5' (linspace) -> (path, values)."""
    if "=" not in spec:
        raise ConfigError(f"axis must look like path=values, got {spec!r}")
    path, vals = spec.split("=", 1)
    path = path.strip()
    try:
        if ":" in vals:
            lo, hi, num = vals.split(":")
            values = [float(v) for v in np.linspace(float(lo), float(hi), int(num))]
        else:
            values = [_number(v) for v in vals.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad axis values in {spec!r}") from None
    if not values:
        raise ConfigError(f"axis {path!r} has no values")
    return path, values


def _number(v: str):
    v = v.strip()
    try:
        return int(v)
    except ValueError:
        return float(v)


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, min(4, os.cpu_count() or 1))


def _one(job):
    idx, cfg_dict, outdir = job
    cfg = from_dict(cfg_dict)
    try:
        res = run(cfg)
    except Exception as exc:  # recorded per run; the sweep goes on
        return idx, None, f"{type(exc).__name__}: {exc}"
    write_outputs(outdir, cfg.name, res.report, res.rows)
    return idx, res.report, ""


def sweep(template: RunConfig, axes, outdir, workers: int | None = None) -> list:
    """Run the Cartesian product of `axes` and write a summary CSV.

    Returns the summary rows as dicts, in grid order.
    """
    axes = [parse_axis(a) if isinstance(a, str) else a for a in axes]
    names = [p for p, _ in axes]
    jobs, points, results = [], [], {}
    for idx, combo in enumerate(itertools.product(*[v for _, v in axes])):
        cfg = template
        try:
            for path, val in zip(names, combo):
                cfg = with_override(cfg, path, val)
        except ConfigError as exc:
            # an invalid grid point is a failed run, not a failed sweep
            results[idx] = (None, f"ConfigError: {exc}")
            points.append((combo, None))
            continue
        cfg.name = f"{template.name}_{idx:04d}"
        jobs.append((idx, cfg.to_dict(), str(outdir)))
        points.append((combo, cfg))
    Path(outdir).mkdir(parents=True, exist_ok=True)
    (Path(outdir) / "template.yaml").write_text(dump(template))

    n = workers or worker_count()
    if n == 1 or len(jobs) <= 1:
        for j in jobs:
            i, rep, err = _one(j)
            results[i] = (rep, err)
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            for i, rep, err in pool.map(_one, jobs):
                results[i] = (rep, err)

    rows = []
    for idx, (combo, cfg) in enumerate(points):
        rep, err = results[idx]
        row = {"run": f"{template.name}_{idx:04d}", **dict(zip(names, combo))}
        if cfg is None:
            row.update(alpha="", beta="", gamma="", big_gamma="")
        else:
            p = cfg.model_params()
            row.update(alpha=p.alpha, beta=p.beta, gamma=p.gamma, big_gamma=p.big_gamma)
        if rep is None:
            row.update(classification="", t_stop="", breaking_holds="", single_sign_holds="",
                       neg_then_pos_holds="", t_bound="", error=err)
        else:
            c = rep["certificates"]
            row.update(classification=rep["classification"], t_stop=rep["run"]["t_stop"],
                       breaking_holds=c["breaking"]["holds"],
                       single_sign_holds=c["SingleSign"]["holds"],
                       neg_then_pos_holds=c["NegThenPos"]["holds"],
                       t_bound=c["breaking"]["t_bound"], error="")
        rows.append(row)
    with open(Path(outdir) / "summary.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    return rows
