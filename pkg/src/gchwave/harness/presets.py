"""Initial data builders and named scenarios."""
from __future__ import annotations

import numpy as np

from ..model import FieldState, GridSpec
from .config import ConfigError, ICCfg, RunConfig, from_dict


def initial_state(ic: ICCfg, grid: GridSpec, seed: int = 0) -> FieldState:
    x = grid.x
    z = (x - ic.x_c) / ic.w
    if ic.kind == "zero":
        return FieldState.from_u(np.zeros_like(x), grid)
    if ic.kind == "gaussian":
        return FieldState.from_u(ic.a * np.exp(-z * z), grid)
    if ic.kind == "sech2":
        return FieldState.from_u(ic.a / np.cosh(z) ** 2, grid)
    if ic.kind == "momentum_bump":
        m0 = ic.a * np.exp(-z * z) * (z if ic.parity == "odd" else 1.0)
        return FieldState.from_m(m0, grid)
    if ic.kind == "table":
        try:
            with open(ic.file) as fh:
                data = np.loadtxt((ln.replace(",", " ") for ln in fh), ndmin=2)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read table {ic.file!r}: {exc}") from None
        if data.shape[1] < 2:
            raise ConfigError("table needs two columns: x u")
        order = np.argsort(data[:, 0])
        xs, us = data[order, 0], data[order, 1]
        period = 2.0 * grid.half_length
        return FieldState.from_u(np.interp(x, xs, us, period=period), grid)
    if ic.kind == "random_bumps":
        rng = np.random.default_rng(seed)
        u = np.zeros_like(x)
        for _ in range(int(ic.count)):
            amp = ic.a * rng.uniform(-1.0, 1.0)
            c = rng.uniform(-0.5, 0.5) * grid.half_length
            w = ic.w * rng.uniform(0.5, 1.5)
            u += amp * np.exp(-(((x - c) / w) ** 2))
        return FieldState.from_u(u, grid)
    raise ConfigError(f"unknown ic kind {ic.kind!r}")


_MARKERS = [round(-3.0 + 0.5 * i, 1) for i in range(13)]

SCENARIOS = {
    "zero": {
        "name": "zero",
        "grid": {"L": 20.0, "n": 256},
        "time": {"t_end": 1.0},
        "params": {"alpha": 1.0},
        "ic": {"kind": "zero"},
    },
    "ch-conservation": {
        "name": "ch-conservation",
        "grid": {"L": 20.0, "n": 1024},
        "time": {"t_end": 10.0},
        "params": {"alpha": 1.0},
        "ic": {"kind": "gaussian", "a": 0.2, "w": 1.0},
    },
    "single-sign": {
        "name": "single-sign",
        "grid": {"L": 40.0, "n": 2048},
        "time": {"t_end": 20.0},
        "params": {"alpha": 0.2, "beta": 0.3, "gamma": 0.1, "big_gamma": 0.5},
        "ic": {"kind": "momentum_bump", "a": 0.2, "w": 2.0, "parity": "even"},
        "monitors": {"markers": _MARKERS},
    },
    "neg-then-pos": {
        "name": "neg-then-pos",
        "grid": {"L": 40.0, "n": 2048},
        "time": {"t_end": 20.0},
        "params": {"alpha": 0.2, "beta": 0.3, "gamma": 0.1, "big_gamma": 0.5},
        "ic": {"kind": "momentum_bump", "a": 0.3, "w": 2.0, "parity": "odd"},
        "monitors": {"markers": _MARKERS},
    },
    "steep-breaking": {
        "name": "steep-breaking",
        "grid": {"L": 5.0, "n": 4096},
        "time": {"t_end": 20.0},
        "params": {"alpha": 0.005},
        "ic": {"kind": "gaussian", "a": 0.5, "w": 0.4},
        "monitors": {"output_every": 1},
    },
    "both-fail": {
        "name": "both-fail",
        "grid": {"L": 20.0, "n": 1024},
        "time": {"t_end": 5.0},
        "params": {"alpha": 1.0},
        "ic": {"kind": "gaussian", "a": 0.3, "w": 1.0},
    },
    "rotation": {
        "name": "rotation",
        "grid": {"L": 40.0, "n": 1024},
        "time": {"t_end": 5.0},
        "rotation": 0.25,
        "ic": {"kind": "gaussian", "a": 0.1, "w": 2.0},
    },
}


def scenario(name: str) -> RunConfig:
    if name not in SCENARIOS:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(SCENARIOS)}")
    return from_dict(SCENARIOS[name])
