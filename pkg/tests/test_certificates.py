import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gchwave.certificates import (breaking_certificate, global_certificate, k_of, p_exponent,
                                  sigma_default)
from gchwave.model import FieldState, ModelParams, make_grid
from gchwave.monitors import PatternKind

# threshold amplitude of a * exp(-(x/0.4)^2), alpha = 0.005, L = 5, n = 4096,
# located by bisection on the certificate predicate
A_STAR = 0.3565430006719544


@pytest.mark.parametrize("params,K", [
    (ModelParams(alpha=1), 4.0),
    (ModelParams(beta=6), 8.0),
    (ModelParams(), 0.0),
    (ModelParams(gamma=-8, big_gamma=0.5), 8.0),
])
def test_k_of(params, K):
    assert k_of(params) == K


def test_sigma_default_and_override():
    assert sigma_default(0.0) == 1.0
    assert sigma_default(4.0) == 1 / 145
    assert sigma_default(4.0, 1 / 200) == 1 / 200
    with pytest.raises(ValueError):
        sigma_default(0.0, 2.0)
    with pytest.raises(ValueError):
        sigma_default(4.0, 0.0)


@pytest.mark.parametrize("h1,p", [(2.0, 4), (0.5, 1), (1.0, 4)])
def test_p_exponent(h1, p):
    assert p_exponent(h1) == p
    assert h1**p == max(h1, h1**3, h1**4)


def test_p_exponent_rejects_zero():
    with pytest.raises(ValueError):
        p_exponent(0.0)


def test_zero_data_is_degenerate():
    g = make_grid(5.0, 256)
    c = breaking_certificate(np.zeros(256), ModelParams(alpha=1), g)
    assert not c.holds and c.degenerate


def _steep(a, g):
    return a * np.exp(-(g.x / 0.4) ** 2)


def test_threshold_amplitude_regression():
    g = make_grid(5.0, 4096)
    p = ModelParams(alpha=0.005)
    assert breaking_certificate(_steep(A_STAR * (1 + 1e-9), g), p, g).holds
    assert not breaking_certificate(_steep(A_STAR * (1 - 1e-9), g), p, g).holds
    c = breaking_certificate(_steep(1.5 * A_STAR, g), p, g)
    assert c.holds and 0 < c.eps < 1
    # the window closes once h1 > 1 switches the exponent to 4
    assert not breaking_certificate(_steep(1.0, g), p, g).holds


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 2.0), st.floats(0.15, 1.5), st.floats(0, 0.05), st.floats(-0.05, 0.05))
def test_breaking_invariants(a, w, alpha, gamma):
    g = make_grid(6.0, 1024)
    p = ModelParams(alpha=alpha, gamma=gamma)
    c = breaking_certificate(a * np.exp(-(g.x / w) ** 2), p, g)
    assert 0 < c.sigma <= 1 / (1 + 36 * c.K)
    assert c.holds == (c.lhs < c.rhs)
    if c.holds:
        assert 0 < c.eps < 1
        assert 2 * c.sigma * (1 - c.eps) * c.y0**2 >= c.rhs**2 * (1 - 1e-12)
        assert c.t_bound == pytest.approx(4 / (c.eps * abs(c.y0)))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.4, 0.6), st.floats(0.3, 0.45), st.floats(-2, 2), st.floats(0.0, 0.2))
def test_breaking_excludes_global(a, w, shift, mix):
    g = make_grid(6.0, 2048)
    u0 = a * (np.exp(-(g.x / w) ** 2) - mix * np.exp(-((g.x - shift) / (2 * w)) ** 2))
    s = FieldState.from_u(u0, g)
    c = breaking_certificate(s.u, ModelParams(alpha=0.005), g)
    assume(c.holds)
    for kind in PatternKind:
        assert not global_certificate(s.u, s.m, g, kind).holds


def test_t_bound_decreases_with_steeper_slope_at_fixed_h1():
    g = make_grid(6.0, 4096)
    p = ModelParams(alpha=0.005)
    target = 0.9
    bounds = []
    for w in (0.4, 0.3, 0.2):
        base = np.exp(-(g.x / w) ** 2)
        h = FieldState.from_u(base, g)
        from gchwave.model import h1_norm
        a = target / h1_norm(h.u, g)
        c = breaking_certificate(a * base, p, g)
        assert c.holds
        bounds.append(c.t_bound)
    assert bounds[0] > bounds[1] > bounds[2]


def test_global_certificates():
    g = make_grid(20.0, 1024)
    bump = np.exp(-g.x**2)
    s = FieldState.from_m(bump, g)
    c = global_certificate(s.u, s.m, g, "SingleSign")
    assert c.holds and c.slope_floor == -c.l1_m0 and c.x0 is None

    s = FieldState.from_m(g.x * np.exp(-g.x**2), g)
    c = global_certificate(s.u, s.m, g, PatternKind.NEG_THEN_POS)
    assert c.holds and abs(c.x0) < g.dx and c.slope_floor == -c.h1_u0
    assert c.h1_u0 < c.l1_m0

    s = FieldState.from_m(np.sin(2 * g.x) * bump, g)
    for kind in PatternKind:
        assert not global_certificate(s.u, s.m, g, kind).holds


def test_certificates_serialize():
    g = make_grid(5.0, 256)
    d = breaking_certificate(_steep(0.5, g), ModelParams(), g).as_dict()
    assert set(d) >= {"K", "sigma", "p", "y0", "x_star", "lhs", "rhs", "holds", "eps", "t_bound"}
    s = FieldState.from_m(np.exp(-g.x**2), g)
    d = global_certificate(s.u, s.m, g, "SingleSign").as_dict()
    assert d["kind"] == "SingleSign" and math.isfinite(d["l1_m0"])
