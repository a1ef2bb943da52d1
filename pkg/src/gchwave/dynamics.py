"""Time integration of the nonlocal evolution form and of the characteristics.

Applying (1 - d^2/dx^2)^{-1} to the momentum equation gives

    u_t = -(u + Gamma) u_x - (1 - d^2/dx^2)^{-1} d/dx (u^2 + u_x^2/2 - h(u)),

which is what `rhs` evaluates.  Particle paths solve q' = u(t, q) + Gamma with
q_x' = u_x(t, q) q_x and are advanced inside the same RK4 stages as the field.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from .model import FieldState, GridSpec, ModelParams, eval_dh, eval_h, norms
from .monitors import breaking_threshold, g_lhs, min_slope, resolution_indicator
from .spectral import SpectralWorkspace

log = logging.getLogger(__name__)

EPS_DEN = 1e-14


class NonFiniteError(FloatingPointError):
    """Raised when a right-hand side evaluation produces NaN or inf."""


class StopReason(str, enum.Enum):
    COMPLETED = "Completed"
    BLOWUP_TRIGGER = "BlowupTrigger"
    DT_UNDERFLOW = "DtUnderflow"
    NON_FINITE = "NonFinite"
    BOUNDARY_CONTAMINATION = "BoundaryContamination"


def rhs(u: np.ndarray, params: ModelParams, ws: SpectralWorkspace,
        dealias: bool = True) -> np.ndarray:
    """du/dt for the sampled field u."""
    uh = np.fft.fft(u)
    ux = np.fft.ifft(ws._deriv_symbol * uh).real
    adv = u * ux
    flux = u * u + 0.5 * ux * ux - eval_h(params, u)
    if dealias:
        adv = ws.dealias(adv)
        flux = ws.dealias(flux)
    out = -params.big_gamma * ux - adv - ws.inverse_helmholtz_dx(flux)
    if not np.all(np.isfinite(out)):
        raise NonFiniteError("non-finite right-hand side")
    return out


def linear_phase_speed(k, params: ModelParams) -> np.ndarray:
    """Phase speed of e^{ik(x - ct)} for the rhs linearised about u = 0."""
    k = np.asarray(k, dtype=float)
    return (params.big_gamma * k**2 - params.alpha) / (1.0 + k**2)


@dataclass
class CharacteristicsState:
    x0: np.ndarray          # label (initial position) of each marker
    q: np.ndarray           # current position, not wrapped
    qx: np.ndarray
    log_qx: np.ndarray      # trapezoid accumulation of u_x(s, q) ds
    source: np.ndarray      # trapezoid accumulation of q_x^2 d/dx h(u)(s, q) ds
    m0: np.ndarray          # initial momentum at the markers
    wraps: int = 0

    @classmethod
    def seed(cls, x0, state: FieldState, ws: SpectralWorkspace) -> "CharacteristicsState":
        x0 = np.array(x0, dtype=float)
        m0 = ws.interpolate(state.m, x0)
        z = np.zeros_like(x0)
        return cls(x0, x0.copy(), np.ones_like(x0), z.copy(), z.copy(), m0)


def _marker_source(u, q, qx, params, ws):
    val, der = ws.interpolate_pair(u, q)
    return qx * qx * eval_dh(params, val) * der, der


def advance_characteristics(chars: CharacteristicsState, stages, dt: float,
                            params: ModelParams, ws: SpectralWorkspace,
                            u_end=None) -> CharacteristicsState:
    """One RK4 step of q' = u + Gamma, q_x' = u_x q_x.

    `stages` holds the four RK4 stage fields (u at t, two at t + dt/2 and one at
    t + dt); passing the same field four times freezes the flow.  `u_end` is
    the accepted field at t + dt, used for the trapezoid end values of the two
    running integrals (defaults to the last stage).
    """
    G = params.big_gamma
    q, qx = chars.q, chars.qx
    kq, kx = [], []
    for i, us in enumerate(stages):
        c = (0.0, 0.5, 0.5, 1.0)[i]
        qs = q + c * dt * kq[-1] if i else q
        qxs = qx + c * dt * kx[-1] if i else qx
        val, der = ws.interpolate_pair(us, qs)
        kq.append(val + G)
        kx.append(der * qxs)
    q_new = q + dt / 6.0 * (kq[0] + 2 * kq[1] + 2 * kq[2] + kq[3])
    qx_new = qx + dt / 6.0 * (kx[0] + 2 * kx[1] + 2 * kx[2] + kx[3])

    s0, d0 = _marker_source(stages[0], q, qx, params, ws)
    s1, d1 = _marker_source(stages[-1] if u_end is None else u_end, q_new, qx_new,
                            params, ws)
    L = ws.half_length
    wrapped = int(np.count_nonzero((q_new < -L) | (q_new >= L)) - np.count_nonzero((q < -L) | (q >= L)))
    return CharacteristicsState(
        chars.x0, q_new, qx_new,
        chars.log_qx + 0.5 * dt * (d0 + d1),
        chars.source + 0.5 * dt * (s0 + s1),
        chars.m0, chars.wraps + abs(wrapped))


def _rk4_stages(u, dt, params, ws, dealias):
    k1 = rhs(u, params, ws, dealias)
    u2 = u + 0.5 * dt * k1
    k2 = rhs(u2, params, ws, dealias)
    u3 = u + 0.5 * dt * k2
    k3 = rhs(u3, params, ws, dealias)
    u4 = u + dt * k3
    k4 = rhs(u4, params, ws, dealias)
    return u + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4), (u, u2, u3, u4)


def step_rk4(state: FieldState, dt: float, params: ModelParams, grid: GridSpec,
             dealias: bool = True) -> FieldState:
    """Classical RK4 step of the field; m is refreshed from the new u."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    ws = grid.workspace()
    u_new, _ = _rk4_stages(state.u, dt, params, ws, dealias)
    return FieldState(state.t + dt, u_new, ws.helmholtz_apply(u_new))


@dataclass
class Controls:
    t_end: float
    dt_max: float = 1e-2
    cfl: float = 0.5
    fixed_dt: float | None = None
    dealias: bool = True
    output_every: int = 10
    dt_min: float = 1e-10
    boundary_tol: float = 1e-2      # relative to max|u0|
    boundary_band: float = 0.02     # fraction of L checked at each end
    blowup_y: float | None = None   # stop once min u_x < -blowup_y; None -> default rule
    resolution_tol: float | None = 1e-10  # stop once the front outruns the grid
    resolution_growth: float = 3.0          # ... but only after min u_x < -growth |y0|
    markers: np.ndarray | None = None
    max_steps: int = 10_000_000


@dataclass
class Trajectory:
    times: np.ndarray
    states: list
    dt_history: np.ndarray
    series: dict = field(default_factory=dict)      # per-step scalar diagnostics
    markers: list = field(default_factory=list)     # CharacteristicsState per snapshot


@dataclass
class RunReport:
    status: StopReason
    t_stop: float
    steps: int
    blowup_y: float
    message: str = ""
    marker_wraps: int = 0


_SERIES_KEYS = ("t", "dt", "h1", "linf_u", "mass_u", "mass_m", "min_ux", "xi", "g_lhs")


def _diagnostics(state, grid, params, dt):
    nb = norms(state, grid)
    s = min_slope(state, grid)
    return (state.t, dt, nb.h1, nb.linf_u, nb.mass_u, nb.mass_m, s.y, s.xi,
            g_lhs(state.u, params, grid))


def _edge_magnitude(u, grid, band):
    x = grid.x
    sel = np.abs(x) >= (1.0 - band) * grid.half_length
    return float(np.max(np.abs(u[sel])))


def integrate(u0, params: ModelParams, grid: GridSpec, controls: Controls):
    """Advance u0 to controls.t_end; returns (Trajectory, RunReport)."""
    ws = grid.workspace()
    state = FieldState.from_u(u0, grid)
    u0max = float(np.max(np.abs(state.u)))
    blowup_y = controls.blowup_y
    if blowup_y is None:
        blowup_y = breaking_threshold(state, grid)
    chars = None
    if controls.markers is not None and len(controls.markers):
        chars = CharacteristicsState.seed(controls.markers, state, ws)

    rows = [_diagnostics(state, grid, params, 0.0)]
    times, states, dts = [0.0], [state], []
    snaps = [chars] if chars is not None else []
    status, msg = StopReason.COMPLETED, ""
    step = 0
    t_end = float(controls.t_end)
    edge_limit = controls.boundary_tol * max(u0max, EPS_DEN)
    steep_limit = -controls.resolution_growth * abs(rows[0][6])

    while state.t < t_end - 1e-14 * max(1.0, t_end):
        if step >= controls.max_steps:
            status, msg = StopReason.DT_UNDERFLOW, "step budget exhausted"
            break
        if controls.fixed_dt is not None:
            dt = controls.fixed_dt
        else:
            speed = float(np.max(np.abs(state.u))) + abs(params.big_gamma) + EPS_DEN
            dt = min(controls.dt_max, controls.cfl * grid.dx / speed)
        if dt < controls.dt_min:
            status, msg = StopReason.DT_UNDERFLOW, f"dt={dt:.3e} below dt_min"
            break
        dt = min(dt, t_end - state.t)
        try:
            u_new, stages = _rk4_stages(state.u, dt, params, ws, controls.dealias)
        except NonFiniteError as exc:
            status, msg = StopReason.NON_FINITE, str(exc)
            break
        if not np.all(np.isfinite(u_new)):
            status, msg = StopReason.NON_FINITE, "non-finite state"
            break
        if chars is not None:
            chars = advance_characteristics(chars, stages, dt, params, ws, u_end=u_new)
        t_new = t_end if t_end - (state.t + dt) < 1e-14 * max(1.0, t_end) else state.t + dt
        state = FieldState(t_new, u_new, ws.helmholtz_apply(u_new))
        step += 1
        dts.append(dt)
        row = _diagnostics(state, grid, params, dt)
        rows.append(row)
        done = state.t >= t_end - 1e-14 * max(1.0, t_end)
        if step % controls.output_every == 0 or done:
            times.append(state.t)
            states.append(state)
            if chars is not None:
                snaps.append(chars)
        if _edge_magnitude(state.u, grid, controls.boundary_band) > edge_limit:
            status, msg = StopReason.BOUNDARY_CONTAMINATION, "solution reached the box edge"
            break
        if row[6] < -blowup_y:
            status, msg = StopReason.BLOWUP_TRIGGER, f"min u_x={row[6]:.4g} below -{blowup_y:.4g}"
            break
        if controls.resolution_tol is not None and row[6] < steep_limit:
            r = resolution_indicator(state.u)
            if r > controls.resolution_tol:
                status = StopReason.BLOWUP_TRIGGER
                msg = f"resolution lost (upper-band energy {r:.2e}) at min u_x={row[6]:.4g}"
                break

    if states[-1] is not state:
        times.append(state.t)
        states.append(state)
        if chars is not None:
            snaps.append(chars)
    arr = np.array(rows, dtype=float)
    series = {k: arr[:, i] for i, k in enumerate(_SERIES_KEYS)}
    traj = Trajectory(np.array(times), states, np.array(dts), series, snaps)
    report = RunReport(status, state.t, step, float(blowup_y), msg,
                       chars.wraps if chars is not None else 0)
    log.debug("integrate stopped: %s at t=%.6g after %d steps", status.value, state.t, step)
    return traj, report

