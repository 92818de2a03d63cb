"""Run configuration: JSON schema, validation, echo.

A config is a flat JSON object; scenario parameters nest under "scenario".
Required fields are scenario.kind, dt and t_end; everything else carries a
default.  Validation reports the dotted path of each offending field.
`resolved()` fills every default in (including the blob width when it
derives from the spacing), so the echoed config reproduces the run when
fed back.
"""

from dataclasses import dataclass, field as dc_field, asdict
import json
import math

from .errors import ConfigError
from .particles import (
    DELTA_OVER_H,
    DIPOLE_BOX_SIGMAS,
    DIPOLE_H,
    load_snapshot,
    seed_gaussian_dipole,
    seed_patch,
)
from .quadrature import QuadSpec

_SCENARIO_KINDS = ("gaussian_dipole", "patch", "from_snapshot")


@dataclass
class SimConfig:
    """Full description of one run."""

    scenario: dict
    dt: float
    t_end: float
    h: float = DIPOLE_H
    delta: float | None = None  # None -> DELTA_OVER_H * h
    mass_floor: float = 1e-8
    record_every: int = 1
    snap_every: int = 250
    cfl: float = 0.5
    k_list: list = dc_field(default_factory=lambda: [2.0, 3.0])
    p_list: list = dc_field(default_factory=lambda: [1.0, 2.0, float("inf")])
    R_list: list = dc_field(default_factory=lambda: [2.0])
    identities_every: int = 25
    deterministic: bool = False
    threads: int | None = None
    out_dir: str = "out"
    seed_meta: dict = dc_field(default_factory=dict)

    def resolved_delta(self):
        return DELTA_OVER_H * self.h if self.delta is None else float(self.delta)

    def quad_spec(self):
        # per-record quadratures run lighter than the verification drivers
        return QuadSpec().lighter(rel_tol=3e-4, max_refine=2)

    def validate(self):
        if not isinstance(self.scenario, dict) or "kind" not in self.scenario:
            raise ConfigError("missing required field: scenario.kind")
        kind = self.scenario["kind"]
        if kind not in _SCENARIO_KINDS:
            raise ConfigError(
                f"scenario.kind: unknown scenario {kind!r}; expected one of {_SCENARIO_KINDS}"
            )
        if kind == "patch":
            for key in ("r0", "z0", "a"):
                if key not in self.scenario:
                    raise ConfigError(f"missing required field: scenario.{key}")
        if kind == "from_snapshot" and "path" not in self.scenario:
            raise ConfigError("missing required field: scenario.path")
        for name in ("dt", "t_end", "h", "mass_floor", "cfl"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or math.isnan(v):
                raise ConfigError(f"{name}: expected a number, got {v!r}")
        if self.dt <= 0.0:
            raise ConfigError("dt: must be > 0")
        if self.t_end < 0.0:
            raise ConfigError("t_end: must be >= 0")
        if self.h <= 0.0:
            raise ConfigError("h: must be > 0")
        if self.delta is not None and self.delta <= 0.0:
            raise ConfigError("delta: must be > 0 when given")
        if self.cfl < 0.0:
            raise ConfigError("cfl: must be >= 0 (0 disables the check)")
        for name in ("record_every", "snap_every", "identities_every"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ConfigError(f"{name}: must be an integer >= 1")
        for name, lo in (("k_list", 1.0), ("R_list", 0.0)):
            vals = getattr(self, name)
            if not vals:
                raise ConfigError(f"{name}: must not be empty")
            for i, v in enumerate(vals):
                if not isinstance(v, (int, float)) or v < lo:
                    raise ConfigError(f"{name}[{i}]: must be a number >= {lo:g}")
        for i, v in enumerate(self.p_list):
            if not isinstance(v, (int, float)) or v < 1.0:
                raise ConfigError(f"p_list[{i}]: must be a number >= 1 (inf allowed)")
        if self.threads is not None and (not isinstance(self.threads, int) or self.threads < 1):
            raise ConfigError("threads: must be a positive integer")
        return self

    def resolved(self):
        """Plain dict with every default filled in."""
        out = asdict(self)
        out["delta"] = self.resolved_delta()
        out["p_list"] = ["inf" if math.isinf(float(p)) else float(p) for p in self.p_list]
        if out["scenario"].get("kind") == "gaussian_dipole":
            sc = dict(_DIPOLE_DEFAULTS)
            sc.update(out["scenario"])
            out["scenario"] = sc
        return out

    def to_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.resolved(), fh, indent=2, sort_keys=True)
            fh.write("\n")


_DIPOLE_DEFAULTS = {
    "kind": "gaussian_dipole",
    "r0": 1.0,
    "z0": 0.5,
    "sigma": 0.2,
    "amp": 1.0,
    "box_sigmas": DIPOLE_BOX_SIGMAS,
}

_KNOWN_KEYS = {
    "scenario",
    "dt",
    "t_end",
    "h",
    "delta",
    "mass_floor",
    "record_every",
    "snap_every",
    "cfl",
    "k_list",
    "p_list",
    "R_list",
    "identities_every",
    "deterministic",
    "threads",
    "out_dir",
    "seed_meta",
}


def default_config(**overrides):
    """The default ring-pair run: ~2000 particles to t = 10."""
    cfg = SimConfig(scenario=dict(_DIPOLE_DEFAULTS), dt=0.02, t_end=10.0)
    for key, val in overrides.items():
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config field: {key}")
        setattr(cfg, key, val)
    return cfg.validate()


def config_from_dict(raw):
    if not isinstance(raw, dict):
        raise ConfigError("config root: expected a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config field: {sorted(unknown)[0]}")
    for req in ("scenario", "dt", "t_end"):
        if req not in raw:
            raise ConfigError(f"missing required field: {req}")
    kwargs = dict(raw)
    if "p_list" in kwargs:
        kwargs["p_list"] = [
            float("inf") if p in ("inf", "Infinity") else p for p in kwargs["p_list"]
        ]
    cfg = SimConfig(**kwargs)
    return cfg.validate()


def load_config(path):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(raw)


def seed_from_config(config):
    """(ParticleSystem, start time) for a validated config."""
    sc = config.scenario
    kind = sc["kind"]
    delta = config.delta  # None lets the seeders apply DELTA_OVER_H * h
    if kind == "gaussian_dipole":
        merged = dict(_DIPOLE_DEFAULTS)
        merged.update(sc)
        system = seed_gaussian_dipole(
            r0=merged["r0"],
            z0=merged["z0"],
            sigma=merged["sigma"],
            amp=merged["amp"],
            h=config.h,
            mass_floor=config.mass_floor,
            box_sigmas=merged["box_sigmas"],
            delta=delta,
        )
        t0 = 0.0
    elif kind == "patch":
        system = seed_patch(
            r0=sc["r0"],
            z0=sc["z0"],
            a=sc["a"],
            h=config.h,
            mass_floor=config.mass_floor,
            delta=delta,
        )
        t0 = 0.0
    else:
        system, t0 = load_snapshot(sc["path"])
        if delta is not None:
            system.delta = float(delta)
    if config.seed_meta:
        system.meta["seed_meta"] = dict(config.seed_meta)
    return system, t0
