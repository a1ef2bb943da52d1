"""Checkable conditions on initial data: global existence or finite-time breaking.

All three tests act on u0 alone.  The continuum hypothesis m0 in L^1 and H^1
becomes finiteness of the discrete norms; decay at the box edge is the
integrator's job.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .model import FieldState, GridSpec, ModelParams, h1_norm
from .monitors import PatternKind, min_slope, sign_pattern


def k_of(params: ModelParams) -> float:
    return 4.0 * max(abs(params.alpha), abs(params.beta) / 3.0,
                     abs(params.gamma) / 4.0, abs(params.big_gamma))


def sigma_default(K: float, override: float | None = None) -> float:
    """Largest admissible sigma, 1/(1 + 36K), or a validated override."""
    top = 1.0 / (1.0 + 36.0 * K)
    if override is None:
        return top
    s = float(override)
    if not (0.0 < s <= top):
        raise ValueError(f"sigma must lie in (0, {top:.6g}], got {s!r}")
    return s


def p_exponent(h1: float) -> int:
    """Exponent realising max{h1, h1^3, h1^4}; the tie at 1 goes to 4."""
    if not h1 > 0:
        raise ValueError("p is undefined for zero data")
    return 1 if h1 < 1.0 else 4


@dataclass(frozen=True)
class BreakingCertificate:
    K: float
    sigma: float
    p: int
    y0: float
    x_star: float
    lhs: float
    rhs: float
    holds: bool
    eps: float | None = None
    t_bound: float | None = None
    degenerate: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


def breaking_certificate(u0, params: ModelParams, grid: GridSpec,
                         sigma: float | None = None) -> BreakingCertificate:
    """Test sqrt(2 sigma) y0 < min{-|u0|_1, -|u0|_1^(p/2)} at the steepest point."""
    u0 = np.asarray(u0, dtype=float)
    K = k_of(params)
    sig = sigma_default(K, sigma)
    h1 = h1_norm(u0, grid)
    slope = min_slope(FieldState.from_u(u0, grid), grid)
    y0 = slope.y
    lhs = math.sqrt(2.0 * sig) * y0
    if h1 == 0.0:
        return BreakingCertificate(K, sig, 4, y0, slope.xi, lhs, 0.0, False, degenerate=True)
    p = p_exponent(h1)
    rhs = min(-h1, -(h1 ** (p / 2.0)))
    if not lhs < rhs:
        return BreakingCertificate(K, sig, p, y0, slope.xi, lhs, rhs, False)
    eps = 1.0 - rhs * rhs / (2.0 * sig * y0 * y0)
    return BreakingCertificate(K, sig, p, y0, slope.xi, lhs, rhs, True,
                               eps=eps, t_bound=4.0 / (eps * abs(y0)))


@dataclass(frozen=True)
class GlobalCertificate:
    kind: PatternKind
    x0: float | None
    l1_m0: float
    h1_u0: float
    holds: bool
    slope_floor: float
    degenerate: bool = False

    def as_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        return d


def global_certificate(u0, m0, grid: GridSpec, kind, tol_sign: float = 1e-10) -> GlobalCertificate:
    kind = PatternKind(kind)
    u0 = np.asarray(u0, dtype=float)
    m0 = np.asarray(m0, dtype=float)
    l1 = float(np.sum(np.abs(m0)) * grid.dx)
    h1 = h1_norm(u0, grid)
    finite = math.isfinite(l1) and math.isfinite(h1)
    pat = sign_pattern(m0, kind, grid, tol_sign)
    floor = -l1 if kind is PatternKind.SINGLE_SIGN else -h1
    x0 = pat.split if kind is PatternKind.NEG_THEN_POS else None
    return GlobalCertificate(kind, x0, l1, h1, bool(pat.ok and finite), floor, pat.degenerate)
