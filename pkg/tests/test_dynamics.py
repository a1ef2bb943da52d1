import numpy as np
import pytest

from gchwave.dynamics import (Controls, StopReason, integrate, linear_phase_speed, rhs,
                              step_rk4)
from gchwave.model import FieldState, ModelParams, eval_h, make_grid, norms
from gchwave.monitors import drifts
from gchwave.spectral import _fd_second_derivative

FULL = ModelParams(alpha=1.0, beta=0.2, gamma=0.1, big_gamma=0.3)


def _fd_first_derivative(f, h):
    c = (-1 / 60, 3 / 20, -3 / 4, 0.0, 3 / 4, -3 / 20, 1 / 60)
    return sum(w * np.roll(f, -off) for off, w in zip(range(-3, 4), c)) / h


@pytest.mark.parametrize("c", [0.0, 0.7, -1.3])
def test_constants_are_equilibria(c):
    g = make_grid(10.0, 64)
    assert np.max(np.abs(rhs(np.full(64, c), FULL, g.workspace()))) < 1e-13


def test_rhs_matches_real_space_composition():
    # oracle: finite differences plus kernel quadrature for the inverse Helmholtz part
    g = make_grid(20.0, 4096)
    ws = g.workspace()
    u = 0.3 * np.exp(-g.x**2) + 0.1 * np.exp(-((g.x - 2) / 1.5) ** 2)
    ux = _fd_first_derivative(u, g.dx)
    flux = u**2 + 0.5 * ux**2 - eval_h(FULL, u)
    oracle = -(u + FULL.big_gamma) * ux - _fd_first_derivative(ws.green_convolve(flux), g.dx)
    assert np.max(np.abs(rhs(u, FULL, ws) - oracle)) < 1e-8


def test_fd_stencils_are_consistent():
    g = make_grid(10.0, 1024)
    f = np.exp(-g.x**2)
    assert np.max(np.abs(_fd_second_derivative(f, g.dx) - (4 * g.x**2 - 2) * f)) < 1e-8


def test_linear_phase_speed():
    p = ModelParams(alpha=0.4, big_gamma=1.0)
    g = make_grid(np.pi * 4, 128)
    j = 3
    k = np.pi * j / g.half_length
    eps = 1e-7
    u0 = eps * np.cos(k * g.x)
    T = 2.0
    tr, rep = integrate(u0, p, g, Controls(t_end=T, fixed_dt=1e-3, resolution_tol=None,
                                           boundary_tol=np.inf))
    assert rep.t_stop == T
    ph0 = np.angle(np.fft.fft(u0)[j])
    ph1 = np.angle(np.fft.fft(tr.states[-1].u)[j])
    c_meas = -(np.angle(np.exp(1j * (ph1 - ph0)))) / (k * T)
    assert c_meas == pytest.approx(float(linear_phase_speed(k, p)), abs=1e-6)


def test_step_is_near_identity_for_tiny_dt():
    g = make_grid(20.0, 256)
    st = FieldState.from_u(0.2 * np.exp(-g.x**2), g)
    errs = []
    for dt in (1e-4, 1e-5):
        new = step_rk4(st, dt, FULL, g)
        errs.append(np.max(np.abs(new.u - st.u)))
    assert errs[1] == pytest.approx(errs[0] / 10, rel=1e-3)
    assert np.allclose(new.m, g.workspace().helmholtz_apply(new.u))


def test_rk4_fourth_order():
    g = make_grid(20.0, 256)
    u0 = 0.2 * np.exp(-g.x**2)
    finals = {}
    for dt in (0.1, 0.05, 0.025, 0.00625):
        tr, _ = integrate(u0, FULL, g, Controls(t_end=1.0, fixed_dt=dt, resolution_tol=None))
        finals[dt] = tr.states[-1].u
    ref = finals[0.00625]
    e = [np.max(np.abs(finals[d] - ref)) for d in (0.1, 0.05, 0.025)]
    orders = np.log2(np.array(e[:-1]) / np.array(e[1:]))
    assert np.all(np.abs(orders - 4.0) < 0.2), orders


def test_short_run_conserves_h1():
    g = make_grid(20.0, 1024)
    tr, rep = integrate(0.2 * np.exp(-g.x**2), FULL, g, Controls(t_end=1.0, fixed_dt=1e-3))
    cons, mass = drifts(tr, g)
    assert rep.status is StopReason.COMPLETED
    assert cons < 1e-9 and mass < 1e-12
    assert np.all(np.diff(tr.times) > 0)


def test_zero_data_stays_zero():
    g = make_grid(20.0, 128)
    tr, rep = integrate(np.zeros(128), FULL, g, Controls(t_end=0.5))
    assert rep.status is StopReason.COMPLETED and rep.t_stop == 0.5
    assert all(np.all(s.u == 0) for s in tr.states)


def test_boundary_contamination_stops():
    g = make_grid(5.0, 128)
    u0 = 0.3 * np.exp(-((g.x - 3.5) / 0.7) ** 2)
    tr, rep = integrate(u0, ModelParams(), g, Controls(t_end=10.0))
    assert rep.status is StopReason.BOUNDARY_CONTAMINATION


def test_characteristics_under_pure_drift():
    g = make_grid(10.0, 64)
    p = ModelParams(big_gamma=1.0)
    x0 = np.array([-2.0, 0.0, 3.0])
    tr, rep = integrate(np.zeros(64), p, g, Controls(t_end=1.5, markers=x0))
    ch = tr.markers[-1]
    assert np.allclose(ch.q, x0 + 1.5, atol=1e-13)
    assert np.allclose(ch.qx, 1.0)


def test_characteristics_routes_agree_and_stay_ordered():
    g = make_grid(20.0, 2048)
    x0 = np.linspace(-3, 3, 9)
    u0 = 0.4 * np.exp(-g.x**2)
    tr, rep = integrate(u0, FULL, g, Controls(t_end=2.0, markers=x0))
    for ch in tr.markers:
        assert np.all(ch.qx > 0)
        assert np.all(np.diff(ch.q) > 0)
        assert np.max(np.abs(ch.qx - np.exp(ch.log_qx))) < 1e-5
    ws = g.workspace()
    ch, st = tr.markers[-1], tr.states[-1]
    lhs = ws.interpolate(st.m, ch.q) * ch.qx**2
    assert np.max(np.abs(lhs - ch.m0 - ch.source)) < 1e-5 * np.max(np.abs(ch.m0))


def test_masses_match_along_run():
    g = make_grid(20.0, 256)
    tr, _ = integrate(0.3 * np.exp(-g.x**2), FULL, g, Controls(t_end=1.0))
    for st in tr.states:
        nb = norms(st, g)
        assert abs(nb.mass_m - nb.mass_u) <= 1e-10 * (1 + abs(nb.mass_u))
