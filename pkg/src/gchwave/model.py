"""Model parameters, grid, field containers and discrete norms.

The equation family is

    m_t + (u + Gamma) m_x + 2 u_x m = d/dx h(u),    m = u - u_xx,
    h(u) = (alpha + Gamma) u + beta/3 u^3 + gamma/4 u^4,

posed on a periodic box [-L, L) standing in for the real line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectral import SpectralWorkspace


@dataclass(frozen=True)
class ModelParams:
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    big_gamma: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "big_gamma"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise ValueError(f"{name} must be finite, got {val!r}")
            object.__setattr__(self, name, val + 0.0)  # folds -0.0 into 0.0

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma,
                "big_gamma": self.big_gamma}


@dataclass(frozen=True)
class GridSpec:
    half_length: float
    n: int
    dx: float = field(init=False)

    def __post_init__(self):
        L, n = float(self.half_length), self.n
        if not (math.isfinite(L) and L > 0):
            raise ValueError(f"half_length must be positive, got {self.half_length!r}")
        if int(n) != n or n < 16 or n & (n - 1):
            raise ValueError(f"n must be a power of two >= 16, got {n!r}")
        object.__setattr__(self, "half_length", L)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "dx", 2.0 * L / n)

    @property
    def x(self) -> np.ndarray:
        return -self.half_length + self.dx * np.arange(self.n)

    def workspace(self) -> SpectralWorkspace:
        return _workspace(self.half_length, self.n)


_WS_CACHE: dict = {}


def _workspace(L: float, n: int) -> SpectralWorkspace:
    key = (L, n)
    ws = _WS_CACHE.get(key)
    if ws is None:
        ws = _WS_CACHE[key] = SpectralWorkspace(L, n)
    return ws


def make_grid(half_length: float, n: int) -> GridSpec:
    return GridSpec(half_length, n)


@dataclass(frozen=True)
class FieldState:
    t: float
    u: np.ndarray
    m: np.ndarray

    @classmethod
    def from_u(cls, u, grid: GridSpec, t: float = 0.0) -> "FieldState":
        u = np.array(u, dtype=float)
        if u.shape != (grid.n,):
            raise ValueError(f"expected {grid.n} samples, got shape {u.shape}")
        return cls(float(t), u, grid.workspace().helmholtz_apply(u))

    @classmethod
    def from_m(cls, m, grid: GridSpec, t: float = 0.0) -> "FieldState":
        m = np.array(m, dtype=float)
        u = grid.workspace().helmholtz_invert(m)
        # keep the pair consistent through the forward operator
        return cls(float(t), u, grid.workspace().helmholtz_apply(u))


@dataclass(frozen=True)
class NormBundle:
    h1: float
    l1_m: float
    linf_u: float
    mass_u: float
    mass_m: float

    def as_dict(self) -> dict:
        return {"h1": self.h1, "l1_m": self.l1_m, "linf_u": self.linf_u,
                "mass_u": self.mass_u, "mass_m": self.mass_m}


def eval_h(params: ModelParams, u) -> np.ndarray:
    """h(u) = (alpha + Gamma) u + beta/3 u^3 + gamma/4 u^4, pointwise."""
    u = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u)):
        raise ValueError("non-finite input to h(u)")
    a = params.alpha + params.big_gamma
    return u * (a + u * u * (params.beta / 3.0 + params.gamma / 4.0 * u))


def eval_dh(params: ModelParams, u) -> np.ndarray:
    """h'(u)."""
    u = np.asarray(u, dtype=float)
    return params.alpha + params.big_gamma + u * u * (params.beta + params.gamma * u)


def h1_norm(u: np.ndarray, grid: GridSpec) -> float:
    ux = grid.workspace().dx(u)
    return float(np.sqrt(np.sum(u * u + ux * ux) * grid.dx))


def hs_norm(u: np.ndarray, grid: GridSpec, s: float) -> float:
    """Discrete H^s norm, sqrt(sum (1+k^2)^s |u_hat|^2) with Parseval scaling."""
    ws = grid.workspace()
    uh = np.fft.fft(u)
    return float(np.sqrt(np.sum(ws.helmholtz_symbol**s * np.abs(uh) ** 2) * grid.dx / grid.n))


def norms(state: FieldState, grid: GridSpec) -> NormBundle:
    u, m, dx = state.u, state.m, grid.dx
    return NormBundle(
        h1=h1_norm(u, grid),
        l1_m=float(np.sum(np.abs(m)) * dx),
        linf_u=float(np.max(np.abs(u))),
        mass_u=float(np.sum(u) * dx),
        mass_m=float(np.sum(m) * dx),
    )


@dataclass(frozen=True)
class RotationConstants:
    """Coriolis-model constants and the coefficients they induce."""

    omega: float
    c: float
    alpha_f: float
    beta0: float
    beta_f: float
    omega1: float
    omega2: float
    params: ModelParams

    def as_dict(self) -> dict:
        return {"omega": self.omega, "c": self.c, "alpha_f": self.alpha_f,
                "beta0": self.beta0, "beta_f": self.beta_f, "omega1": self.omega1,
                "omega2": self.omega2, **self.params.as_dict()}


def rotation_constants(Omega: float) -> RotationConstants:
    """Rotation-Camassa-Holm constants for rotation frequency Omega.

    The model  m_t + u m_x + 2 u_x m + c u_x - (beta0/beta_f) u_xxx
    + (omega1/alpha_f^2) u^2 u_x + (omega2/alpha_f^3) u^3 u_x = 0
    is this family with alpha = -c, Gamma = beta0/beta_f,
    beta = -omega1/alpha_f^2, gamma = -omega2/alpha_f^3.
    """
    Omega = float(Omega)
    if not math.isfinite(Omega):
        raise ValueError("Omega must be finite")
    c = math.sqrt(1.0 + Omega * Omega) - Omega
    c2 = c * c
    alpha_f = c2 / (1.0 + c2)
    beta0 = c * (c2 * c2 + 6.0 * c2 - 1.0) / (6.0 * (c2 + 1.0) ** 2)
    beta_f = (3.0 * c2 * c2 + 8.0 * c2 - 1.0) / (6.0 * (c2 + 1.0) ** 2)
    omega1 = -3.0 * c * (c2 - 1.0) * (c2 - 2.0) / (2.0 * (1.0 + c2) ** 3)
    omega2 = (c2 - 1.0) ** 2 * (c2 - 2.0) * (8.0 * c2 - 1.0) / (2.0 * (1.0 + c2) ** 5)
    if beta_f == 0.0 or alpha_f == 0.0:
        raise ValueError(f"rotation preset unsupported for Omega={Omega}: degenerate constants")
    params = ModelParams(alpha=-c, beta=-omega1 / alpha_f**2,
                         gamma=-omega2 / alpha_f**3, big_gamma=beta0 / beta_f)
    return RotationConstants(Omega, c, alpha_f, beta0 + 0.0, beta_f, omega1 + 0.0,
                             omega2 + 0.0, params)


def rotation_preset(Omega: float) -> ModelParams:
    return rotation_constants(Omega).params
