"""Run-time checks of the analytic bounds along a computed trajectory.

Every inequality here is a statement about exact solutions on the line; the
checks test its discrete shadow with an explicit additive slack.  Breaking
cannot be proven numerically, so a WaveBreaking verdict only means the run is
consistent with it.
"""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field

import numpy as np

from .model import FieldState, GridSpec, ModelParams, NormBundle, eval_h, norms


class Classification(str, enum.Enum):
    RAN_TO_HORIZON = "RanToHorizon"
    WAVE_BREAKING = "WaveBreaking"
    NUMERICAL_FAILURE = "NumericalFailure"


class PatternKind(str, enum.Enum):
    SINGLE_SIGN = "SingleSign"
    NEG_THEN_POS = "NegThenPos"


@dataclass(frozen=True)
class SlopeSample:
    t: float
    y: float
    xi: float


@dataclass
class MonitorConfig:
    tol_cons: float = 1e-8
    tol_mass: float = 1e-8
    slack: float = 1e-6
    envelope_slack: float = 1e-2
    bounded_factor: float = 2.0     # C_u
    bounded_offset: float = 1e-3    # C
    accel_window: int = 10
    min_growth: float = 3.0         # |y| must reach this multiple of |y(0)|
    tol_sign: float = 1e-10         # relative to max|m|


@dataclass
class MonitorReport:
    cons_drift: float
    mass_drift: float
    bound_violations: list = field(default_factory=list)
    classification: Classification = Classification.NUMERICAL_FAILURE
    slope_series: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def min_slope(state: FieldState, grid: GridSpec) -> SlopeSample:
    """inf_x u_x with the argmin refined by a parabola through its neighbours."""
    ux = grid.workspace().dx(state.u)
    j = int(np.argmin(ux))
    n = grid.n
    fm, f0, fp = ux[(j - 1) % n], ux[j], ux[(j + 1) % n]
    curv = fm - 2.0 * f0 + fp
    x = -grid.half_length + j * grid.dx
    if curv <= 0.0:
        return SlopeSample(state.t, float(f0), float(x))
    delta = 0.5 * (fm - fp) / curv
    y = f0 - 0.125 * (fm - fp) ** 2 / curv
    return SlopeSample(state.t, float(min(y, f0)), float(x + delta * grid.dx))


def breaking_threshold(state: FieldState, grid: GridSpec, factor: float = 1e3,
                       absolute: float = 1e3) -> float:
    """Nominal slope magnitude Y_max: factor*|y(0)|, or `absolute` for flat data."""
    y0 = abs(min_slope(state, grid).y)
    return float(factor * y0) if y0 > 0 else float(absolute)


def resolution_indicator(u: np.ndarray) -> float:
    """Share of spectral energy in the upper half of the modes kept by the 2/3 rule.

    A steepening front pushes energy toward the truncation; once this share
    passes ~1e-10 the discrete invariants start to drift visibly.
    """
    n = len(u)
    e = np.abs(np.fft.fft(u)) ** 2
    total = e.sum()
    if total == 0.0:
        return 0.0
    j = np.abs(np.fft.fftfreq(n, d=1.0 / n))
    return float(e[(j >= n / 6.0) & (j < n / 3.0)].sum() / total)


def g_lhs(u: np.ndarray, params: ModelParams, grid: GridSpec) -> float:
    """sup |(1 - d^2/dx^2)^{-1} h(u) - h(u)|."""
    h = eval_h(params, u)
    if not np.any(h):
        return 0.0
    return float(np.max(np.abs(grid.workspace().helmholtz_invert(h) - h)))


def g_bound_check(state: FieldState, params: ModelParams, grid: GridSpec,
                  init_norms: NormBundle, K: float, p: int, slack: float = 1e-6):
    """(lhs, rhs, ok) for |G(u)| <= 9 K ||u0||_{H^1}^p."""
    lhs = g_lhs(state.u, params, grid)
    rhs = 9.0 * K * init_norms.h1**p
    if K == 0.0:
        return lhs, rhs, lhs == 0.0
    return lhs, rhs, lhs <= rhs + slack


def slope_floor(init_norms: NormBundle, kind) -> float:
    kind = PatternKind(kind)
    return -(init_norms.l1_m if kind is PatternKind.SINGLE_SIGN else init_norms.h1)


def check_lower_bounds(traj, init_norms: NormBundle, cert_kind, slack: float = 1e-6) -> list:
    """Times at which min u_x dips below the certified floor."""
    floor = slope_floor(init_norms, cert_kind)
    t, y = traj.series["t"], traj.series["min_ux"]
    bad = np.nonzero(y < floor - slack)[0]
    return [("slope_floor", float(t[i]), float(y[i]), floor) for i in bad]


@dataclass(frozen=True)
class SignPattern:
    ok: bool
    degenerate: bool = False
    split: float | None = None


def sign_pattern(m: np.ndarray, kind, grid: GridSpec, tol_sign: float = 1e-10,
                 split_hint: float | None = None) -> SignPattern:
    """Does m match the single-sign or negative-then-positive pattern?

    Values within tol_sign*max|m| of zero count as either sign.  For the
    negative-then-positive pattern `split_hint` (e.g. the position of the
    marker started at x0) must separate the two regions when given.
    """
    kind = PatternKind(kind)
    scale = float(np.max(np.abs(m)))
    if scale == 0.0:
        return SignPattern(True, degenerate=True)
    thr = tol_sign * scale
    neg = np.nonzero(m < -thr)[0]
    pos = np.nonzero(m > thr)[0]
    x = grid.x
    if kind is PatternKind.SINGLE_SIGN:
        return SignPattern(len(neg) == 0 or len(pos) == 0)
    if len(neg) == 0 or len(pos) == 0:
        return SignPattern(True, degenerate=True,
                           split=float(x[pos[0]]) if len(pos) else None)
    last_neg, first_pos = neg[-1], pos[0]
    if last_neg >= first_pos:
        return SignPattern(False)
    # zero crossing between the two regions, linear interpolation
    a, b = m[last_neg], m[first_pos]
    split = float(x[last_neg] + (x[first_pos] - x[last_neg]) * (-a) / (b - a))
    if split_hint is not None:
        L = grid.half_length
        h = (split_hint + L) % (2 * L) - L
        if not (x[last_neg] - grid.dx <= h <= x[first_pos] + grid.dx):
            return SignPattern(False, split=split)
    return SignPattern(True, split=split)


def _fd_derivative(t, y):
    """Nonuniform central difference at interior samples plus a one-sided spread."""
    hm = t[1:-1] - t[:-2]
    hp = t[2:] - t[1:-1]
    dm = (y[1:-1] - y[:-2]) / hm
    dp = (y[2:] - y[1:-1]) / hp
    central = (hm * dp + hp * dm) / (hm + hp)
    return central, np.abs(dp - dm)


def slope_ode_check(t, y, init_norms: NormBundle, K: float, p: int,
                    slack: float = 1e-6):
    """y' + y^2/2 <= ||u0||^2/4 + 9K||u0||^p at interior samples.

    Returns (ok, violations); the per-sample slack is the larger of `slack`
    and the spread between the forward and backward differences.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(t) < 3:
        return True, []
    bound = init_norms.h1**2 / 4.0 + 9.0 * K * init_norms.h1**p
    dy, spread = _fd_derivative(t, y)
    lhs = dy + 0.5 * y[1:-1] ** 2
    allow = bound + np.maximum(slack, spread)
    bad = np.nonzero(lhs > allow)[0]
    viol = [("slope_ode", float(t[i + 1]), float(lhs[i]), float(bound)) for i in bad]
    return not viol, viol


def gronwall_envelope_check(t, y, y0: float, eps: float, slack: float = 1e-2):
    """1/y(t) >= 1/y(0) + eps t/4 - slack wherever y < 0."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    neg = y < 0
    lhs = 1.0 / y[neg]
    rhs = 1.0 / y0 + 0.25 * eps * t[neg]
    bad = np.nonzero(lhs < rhs - slack)[0]
    tt = t[neg]
    viol = [("gronwall", float(tt[i]), float(lhs[i]), float(rhs[i])) for i in bad]
    return not viol, viol


def drifts(traj, grid: GridSpec):
    """Max relative H^1 drift and max relative drift of the two masses."""
    s = traj.series
    h0 = s["h1"][0]
    cons = float(np.max(np.abs(s["h1"] - h0)) / h0) if h0 > 0 else 0.0
    u0 = traj.states[0].u
    scale = max(abs(s["mass_u"][0]), float(np.sum(np.abs(u0))) * grid.dx, 1e-300)
    mass = max(float(np.max(np.abs(s["mass_u"] - s["mass_u"][0]))),
               float(np.max(np.abs(s["mass_m"] - s["mass_m"][0])))) / scale
    return cons, mass


def accelerating(t, y, window: int) -> bool:
    """Strictly decreasing y whose decrease rate trends upward over the window.

    The trend is the least-squares slope of -dy/dt against time, which is
    robust to the sample-to-sample jitter of the refined minimum.
    """
    if len(t) < window + 1:
        return False
    tt, yy = np.asarray(t[-window - 1:]), np.asarray(y[-window - 1:])
    dy = np.diff(yy)
    if np.any(dy >= 0):
        return False
    rate = -dy / np.diff(tt)
    mid = 0.5 * (tt[1:] + tt[:-1])
    return bool(np.polyfit(mid, rate, 1)[0] > 0)


def classify(traj, run_report, init_norms: NormBundle, t_end: float,
             violations: list, cfg: MonitorConfig | None = None,
             cons_drift: float = 0.0, mass_drift: float = 0.0) -> Classification:
    cfg = cfg or MonitorConfig()
    status = getattr(run_report.status, "value", run_report.status)
    s = traj.series
    if status == "BlowupTrigger":
        bounded = np.max(s["linf_u"]) <= cfg.bounded_factor * s["linf_u"][0] + cfg.bounded_offset
        y0 = abs(s["min_ux"][0])
        steep = s["min_ux"][-1] < -min(run_report.blowup_y, cfg.min_growth * y0)
        if bounded and steep and accelerating(s["t"], s["min_ux"], cfg.accel_window):
            return Classification.WAVE_BREAKING
        return Classification.NUMERICAL_FAILURE
    if (status == "Completed" and run_report.t_stop >= t_end * (1 - 1e-12) and not violations
            and cons_drift <= cfg.tol_cons and mass_drift <= cfg.tol_mass):
        return Classification.RAN_TO_HORIZON
    return Classification.NUMERICAL_FAILURE


def summarize(traj, run_report, grid: GridSpec, t_end: float, K: float, p: int,
              cert_kind=None, breaking=None, cfg: MonitorConfig | None = None) -> MonitorReport:
    """Run every applicable check over a finished trajectory.

    `cert_kind` selects the global slope floor to test (None skips it);
    `breaking` is a BreakingCertificate whose envelope is tested when it holds.
    """
    cfg = cfg or MonitorConfig()
    s = traj.series
    init = traj.states[0]
    nb0 = norms(init, grid)
    cons, mass = drifts(traj, grid)
    viol = []
    g_rhs = 9.0 * K * nb0.h1**p
    # K = 0 means h = 0, so G must vanish identically
    allow = 0.0 if K == 0.0 else g_rhs + cfg.slack
    for t, g in zip(s["t"], s["g_lhs"]):
        if g > allow:
            viol.append(("g_bound", float(t), float(g), g_rhs))
    viol += slope_ode_check(s["t"], s["min_ux"], nb0, K, p, cfg.slack)[1]
    if cert_kind is not None:
        viol += check_lower_bounds(traj, nb0, cert_kind, cfg.slack)
    if breaking is not None and breaking.holds:
        viol += gronwall_envelope_check(s["t"], s["min_ux"], breaking.y0, breaking.eps,
                                        cfg.envelope_slack)[1]
    cls = classify(traj, run_report, nb0, t_end, viol, cfg, cons, mass)
    notes = []
    if cls is Classification.WAVE_BREAKING:
        notes.append("consistent with wave breaking")
    samples = [SlopeSample(float(t), float(y), float(x))
               for t, y, x in zip(s["t"], s["min_ux"], s["xi"])]
    return MonitorReport(cons, mass, viol, cls, samples, notes)



@dataclass(frozen=True)
class CharacteristicsCheck:
    min_qx: float
    residual: float
    scale: float
    snapshots: int

    def as_dict(self) -> dict:
        return asdict(self)


def characteristics_check(traj, grid: GridSpec) -> CharacteristicsCheck | None:
    """Positivity of q_x and the transport identity m(t,q) q_x^2 = m0 + source.

    Evaluated at every stored snapshot; `scale` is max|m0| over the markers.
    """
    if not traj.markers:
        return None
    ws = grid.workspace()
    min_qx, resid = np.inf, 0.0
    for st, ch in zip(traj.states, traj.markers):
        lhs = ws.interpolate(st.m, ch.q) * ch.qx**2
        resid = max(resid, float(np.max(np.abs(lhs - ch.m0 - ch.source))))
        min_qx = min(min_qx, float(np.min(ch.qx)))
    scale = float(np.max(np.abs(traj.markers[0].m0)))
    return CharacteristicsCheck(min_qx, resid, scale, len(traj.markers))
