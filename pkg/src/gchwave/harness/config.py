"""Run configuration: a nested YAML mapping validated into dataclasses."""
from __future__ import annotations

import copy
from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml

from ..model import GridSpec, ModelParams, rotation_constants

IC_KINDS = ("gaussian", "sech2", "momentum_bump", "table", "random_bumps", "zero")


class ConfigError(ValueError):
    pass


@dataclass
class GridCfg:
    L: float = 20.0
    n: int = 1024


@dataclass
class TimeCfg:
    t_end: float = 10.0
    dt_max: float = 1e-2
    cfl: float = 0.5
    fixed_dt: float | None = None


@dataclass
class ParamsCfg:
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    big_gamma: float = 0.0


@dataclass
class ICCfg:
    kind: str = "gaussian"
    a: float = 0.2
    w: float = 1.0
    x_c: float = 0.0
    parity: str = "even"        # momentum_bump: "even" or "odd" profile for m0
    file: str | None = None     # table: two-column x,u text file
    count: int = 3              # random_bumps


@dataclass
class MonitorsCfg:
    tol_cons: float = 1e-8
    tol_mass: float = 1e-8
    slack: float = 1e-6
    envelope_slack: float = 1e-2
    output_every: int = 10
    boundary_tol: float = 1e-2
    resolution_tol: float | None = 1e-10
    markers: list | None = None
    sigma: float | None = None


@dataclass
class RunConfig:
    name: str = "run"
    grid: GridCfg = field(default_factory=GridCfg)
    time: TimeCfg = field(default_factory=TimeCfg)
    params: ParamsCfg | None = None
    rotation: float | None = None   # rotation frequency Omega
    ic: ICCfg = field(default_factory=ICCfg)
    monitors: MonitorsCfg = field(default_factory=MonitorsCfg)
    seed: int = 0

    def model_params(self) -> ModelParams:
        if self.rotation is not None:
            return rotation_constants(self.rotation).params
        p = self.params or ParamsCfg()
        return ModelParams(p.alpha, p.beta, p.gamma, p.big_gamma)

    def grid_spec(self) -> GridSpec:
        return GridSpec(self.grid.L, self.grid.n)

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.params is None:
            del d["params"]
        if self.rotation is None:
            del d["rotation"]
        return d


_SECTIONS = {"grid": GridCfg, "time": TimeCfg, "params": ParamsCfg, "ic": ICCfg,
             "monitors": MonitorsCfg}


def _section(cls, raw, name):
    if raw is None:
        return cls()
    if not isinstance(raw, dict):
        raise ConfigError(f"section '{name}' must be a mapping")
    known = cls.__dataclass_fields__
    extra = set(raw) - set(known)
    if extra:
        raise ConfigError(f"unknown keys in '{name}': {sorted(extra)}")
    try:
        return cls(**raw)
    except TypeError as exc:
        raise ConfigError(f"bad section '{name}': {exc}") from None


def from_dict(raw: dict) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")
    extra = set(raw) - {"name", "seed", "rotation", *_SECTIONS}
    if extra:
        raise ConfigError(f"unknown top-level keys: {sorted(extra)}")
    has_params, has_rot = raw.get("params") is not None, raw.get("rotation") is not None
    if has_params and has_rot:
        raise ConfigError("give exactly one of 'params' and 'rotation'")
    cfg = RunConfig(
        name=str(raw.get("name", "run")),
        grid=_section(GridCfg, raw.get("grid"), "grid"),
        time=_section(TimeCfg, raw.get("time"), "time"),
        params=_section(ParamsCfg, raw.get("params"), "params") if has_params else None,
        rotation=float(raw["rotation"]) if has_rot else None,
        ic=_section(ICCfg, raw.get("ic"), "ic"),
        monitors=_section(MonitorsCfg, raw.get("monitors"), "monitors"),
        seed=raw.get("seed", 0),
    )
    if not has_params and not has_rot:
        cfg.params = ParamsCfg()
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    """Numeric sanity; raises ConfigError with the offending field."""
    def num(x, what, positive=False):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ConfigError(f"{what} must be a number, got {x!r}")
        if positive and not x > 0:
            raise ConfigError(f"{what} must be positive, got {x!r}")
    num(cfg.grid.L, "grid.L", True)
    if isinstance(cfg.grid.n, bool) or not isinstance(cfg.grid.n, int):
        raise ConfigError(f"grid.n must be an integer, got {cfg.grid.n!r}")
    num(cfg.time.t_end, "time.t_end")
    if cfg.time.t_end < 0:
        raise ConfigError("time.t_end must be non-negative")
    num(cfg.time.dt_max, "time.dt_max", True)
    num(cfg.time.cfl, "time.cfl", True)
    if cfg.time.fixed_dt is not None:
        num(cfg.time.fixed_dt, "time.fixed_dt", True)
    if cfg.params is not None:
        for k in ("alpha", "beta", "gamma", "big_gamma"):
            num(getattr(cfg.params, k), f"params.{k}")
    if cfg.ic.kind not in IC_KINDS:
        raise ConfigError(f"ic.kind must be one of {IC_KINDS}, got {cfg.ic.kind!r}")
    num(cfg.ic.a, "ic.a")
    num(cfg.ic.w, "ic.w", True)
    num(cfg.ic.x_c, "ic.x_c")
    if cfg.ic.parity not in ("even", "odd"):
        raise ConfigError("ic.parity must be 'even' or 'odd'")
    if cfg.ic.kind == "table" and not cfg.ic.file:
        raise ConfigError("ic.kind=table needs ic.file")
    if isinstance(cfg.seed, bool) or not isinstance(cfg.seed, int):
        raise ConfigError(f"seed must be an integer, got {cfg.seed!r}")
    for k in ("tol_cons", "tol_mass", "slack", "envelope_slack", "boundary_tol"):
        num(getattr(cfg.monitors, k), f"monitors.{k}", True)
    if cfg.monitors.resolution_tol is not None:
        num(cfg.monitors.resolution_tol, "monitors.resolution_tol", True)
    if int(cfg.monitors.output_every) < 1:
        raise ConfigError("monitors.output_every must be >= 1")
    try:
        cfg.grid_spec()
        cfg.model_params()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed YAML: {exc}") from None
    return from_dict(raw)


def dump(cfg: RunConfig) -> str:
    return yaml.safe_dump(cfg.to_dict(), sort_keys=False)


def with_override(cfg: RunConfig, path: str, value) -> RunConfig:
    """Copy of cfg with a dotted key set, e.g. 'ic.a' or 'rotation'."""
    d = copy.deepcopy(cfg.to_dict())
    keys = path.split(".")
    if keys[0] == "rotation":
        d.pop("params", None)
    elif keys[0] == "params":
        d.pop("rotation", None)
        d.setdefault("params", asdict(ParamsCfg()))
    node = d
    for k in keys[:-1]:
        if not isinstance(node.get(k), dict):
            raise ConfigError(f"no config section '{k}' in '{path}'")
        node = node[k]
    node[keys[-1]] = value
    return from_dict(d)


REFERENCE = """\
# Run configuration reference (all values shown are the defaults).
name: run                # label used for output file names
seed: 0                  # RNG seed for ic.kind = random_bumps
grid:
  L: 20.0                # periodic box is [-L, L)
  n: 1024                # grid points, a power of two >= 16
time:
  t_end: 10.0            # horizon
  dt_max: 0.01           # step cap
  cfl: 0.5               # dt <= cfl dx / (max|u| + |Gamma|)
  fixed_dt: null         # set to bypass the adaptive rule
params:                  # exactly one of params / rotation
  alpha: 0.0
  beta: 0.0
  gamma: 0.0
  big_gamma: 0.0         # Gamma
# rotation: 0.25         # rotation frequency Omega; derives all four params
ic:
  kind: gaussian         # gaussian | sech2 | momentum_bump | table | random_bumps | zero
  a: 0.2                 # amplitude
  w: 1.0                 # width
  x_c: 0.0               # centre
  parity: even           # momentum_bump: m0 = a g or a ((x-x_c)/w) g, g Gaussian
  file: null             # table: text file with columns x u
  count: 3               # random_bumps: number of Gaussian bumps
monitors:
  tol_cons: 1.0e-8       # relative H1 drift allowed for RanToHorizon
  tol_mass: 1.0e-8       # relative mass drift allowed for RanToHorizon
  slack: 1.0e-6          # additive slack on pointwise bounds
  envelope_slack: 0.01   # slack on the 1/y breaking envelope
  output_every: 10       # snapshot cadence in steps (CSV has every step)
  boundary_tol: 0.01     # stop when |u| near the box edge exceeds this times max|u0|
  resolution_tol: 1.0e-10  # stop when upper-band spectral energy share exceeds this
  markers: null          # initial positions of tracked characteristics
  sigma: null            # breaking-certificate sigma; null -> largest admissible
"""
