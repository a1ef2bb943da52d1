"""One configured run: certificates, integration, monitors, report."""
from __future__ import annotations

import logging
import math
import platform
import time
from dataclasses import dataclass

import numpy as np

from ..certificates import breaking_certificate, global_certificate, k_of
from ..dynamics import Controls, Trajectory, integrate
from ..dynamics import RunReport as DynReport
from ..monitors import (Classification, MonitorConfig, PatternKind, characteristics_check,
                        summarize)
from ..model import rotation_constants
from .config import RunConfig
from .presets import initial_state

log = logging.getLogger(__name__)

EXIT_CODES = {
    Classification.RAN_TO_HORIZON: 0,
    Classification.WAVE_BREAKING: 10,
    Classification.NUMERICAL_FAILURE: 20,
}
EXIT_CONFIG = 2
DECAY_TOL = 1e-12

CSV_COLUMNS = ("t", "h1", "linf_u", "mass_u", "mass_m", "min_ux", "xi", "g_lhs", "g_rhs", "dt")


def _clean(x):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to None."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_clean(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if hasattr(x, "value"):
        return x.value
    return x


def certificates(cfg: RunConfig) -> dict:
    """All three certificates for the configured initial data, no time stepping."""
    grid = cfg.grid_spec()
    params = cfg.model_params()
    st = initial_state(cfg.ic, grid, cfg.seed)
    brk = breaking_certificate(st.u, params, grid, cfg.monitors.sigma)
    out = {"breaking": brk.as_dict()}
    for kind in PatternKind:
        out[kind.value] = global_certificate(st.u, st.m, grid, kind).as_dict()
    return _clean(out)


@dataclass
class RunResult:
    report: dict
    rows: list            # CSV rows in CSV_COLUMNS order
    trajectory: Trajectory
    dyn: DynReport

    @property
    def classification(self) -> Classification:
        return Classification(self.report["classification"])

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.classification]


def _versions() -> dict:
    from .. import __version__
    return {"gchwave": __version__, "numpy": np.__version__,
            "python": platform.python_version()}


def run(cfg: RunConfig, wall_time: bool = False) -> RunResult:
    t0 = time.perf_counter()
    grid = cfg.grid_spec()
    params = cfg.model_params()
    st = initial_state(cfg.ic, grid, cfg.seed)
    mon = cfg.monitors
    certs = certificates(cfg)
    notes = []
    edge = float(max(abs(st.u[0]), abs(st.u[-1])))
    if edge > DECAY_TOL:
        notes.append(f"initial data not decayed at the box edge: |u0(+-L)| = {edge:.3g}")
        log.warning("%s: %s", cfg.name, notes[-1])
    brk = breaking_certificate(st.u, params, grid, mon.sigma)

    controls = Controls(
        t_end=cfg.time.t_end, dt_max=cfg.time.dt_max, cfl=cfg.time.cfl,
        fixed_dt=cfg.time.fixed_dt, output_every=int(mon.output_every),
        boundary_tol=mon.boundary_tol, resolution_tol=mon.resolution_tol,
        markers=np.array(mon.markers, dtype=float) if mon.markers else None,
    )
    traj, dyn = integrate(st.u, params, grid, controls)

    K = k_of(params)
    p = brk.p
    kind = next((k for k in PatternKind if certs[k.value]["holds"]), None)
    mcfg = MonitorConfig(tol_cons=mon.tol_cons, tol_mass=mon.tol_mass, slack=mon.slack,
                         envelope_slack=mon.envelope_slack)
    summ = summarize(traj, dyn, grid, cfg.time.t_end, K, p, cert_kind=kind,
                     breaking=brk if brk.holds else None, cfg=mcfg)
    chk = characteristics_check(traj, grid)

    h1_0 = float(traj.series["h1"][0])
    g_rhs = 9.0 * K * h1_0**p
    s = traj.series
    rows = [[float(s[c][i]) if c != "g_rhs" else g_rhs for c in CSV_COLUMNS]
            for i in range(len(s["t"]))]

    report = {
        "config": cfg.to_dict(),
        "params": params.as_dict(),
        "certificates": certs,
        "run": {"status": dyn.status.value, "t_stop": dyn.t_stop, "steps": dyn.steps,
                "blowup_y": dyn.blowup_y, "message": dyn.message,
                "marker_wraps": dyn.marker_wraps},
        "monitors": {
            "cons_drift": summ.cons_drift,
            "mass_drift": summ.mass_drift,
            "violations": len(summ.bound_violations),
            "first_violations": [list(v) for v in summ.bound_violations[:5]],
            "min_ux": float(np.min(s["min_ux"])),
            "max_linf_u": float(np.max(s["linf_u"])),
            "g_rhs": g_rhs,
            "K": K,
            "p": p,
            "slope_floor_kind": kind.value if kind else None,
            "characteristics": chk.as_dict() if chk else None,
            "notes": notes + summ.notes,
        },
        "classification": summ.classification.value,
        "versions": _versions(),
    }
    if cfg.rotation is not None:
        report["rotation"] = rotation_constants(cfg.rotation).as_dict()
    if wall_time:
        report["wall_time"] = time.perf_counter() - t0
    log.info("%s: %s (%s at t=%.4g)", cfg.name, summ.classification.value,
             dyn.status.value, dyn.t_stop)
    return RunResult(_clean(report), rows, traj, dyn)
