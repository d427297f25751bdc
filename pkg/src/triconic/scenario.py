"""Scenario file ingestion.

Scenarios are JSON documents describing the three bodies, the sampling
grid (a time grid or an angle grid, exactly one), optional integrator
settings, and optional per-body overrides of the initial radius scalars.
Parse failures report the offending line; validation failures name the
offending field. See README.md for the documented schema.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ScenarioError
from .integrator import IntegratorSettings
from .kinematics import G_SI, BodyState, SystemConfig, Vec2

UNITS = ("SI", "dimensionless")
SWEEP_PARAMS = ("m1", "m2", "m3", "G")


@dataclass(frozen=True)
class TimeGridSpec:
    start: float
    stop: float
    samples: int

    def to_array(self) -> np.ndarray:
        if self.samples == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.samples)


@dataclass(frozen=True)
class ThetaGridSpec:
    subject: int
    start: float
    stop: float
    samples: int

    def to_array(self) -> np.ndarray:
        if self.samples == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.samples)


@dataclass(frozen=True)
class Scenario:
    config: SystemConfig
    units: str
    time_grid: TimeGridSpec | None
    theta_grid: ThetaGridSpec | None
    settings: IntegratorSettings
    ic_overrides: dict[int, tuple[float, float]] | None


def _number(raw: dict, key: str, where: str, default=None, minimum=None, strict=False):
    if key not in raw:
        if default is not None:
            return default
        raise ScenarioError(f"{where}: missing required field {key!r}")
    v = raw[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ScenarioError(f"{where}.{key}: expected a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise ScenarioError(f"{where}.{key}: must be finite")
    if minimum is not None and (v < minimum or (strict and v == minimum)):
        op = ">" if strict else ">="
        raise ScenarioError(f"{where}.{key}: must be {op} {minimum}, got {v}")
    return v


def _vec2(raw, where: str) -> Vec2:
    if not isinstance(raw, list) or len(raw) != 2:
        raise ScenarioError(
            f"{where}: expected a planar [x, y] pair (this tool is strictly 2D), got {raw!r}"
        )
    for c in raw:
        if isinstance(c, bool) or not isinstance(c, (int, float)):
            raise ScenarioError(f"{where}: components must be numbers, got {c!r}")
    return Vec2(float(raw[0]), float(raw[1]))


def _grid(raw: dict, where: str, with_subject: bool):
    samples = raw.get("samples")
    if not isinstance(samples, int) or isinstance(samples, bool) or samples < 1:
        raise ScenarioError(f"{where}.samples: expected a positive integer")
    start = _number(raw, "start", where, default=None)
    stop = _number(raw, "stop", where, default=None)
    if samples > 1 and stop <= start:
        raise ScenarioError(f"{where}: stop must exceed start for multi-sample grids")
    if with_subject:
        subject = raw.get("subject")
        if subject not in (1, 2, 3):
            raise ScenarioError(f"{where}.subject: expected 1, 2, or 3")
        return ThetaGridSpec(subject=subject, start=start, stop=stop, samples=samples)
    return TimeGridSpec(start=start, stop=stop, samples=samples)


def _settings(raw: dict | None) -> IntegratorSettings:
    if raw is None:
        return IntegratorSettings()
    if not isinstance(raw, dict):
        raise ScenarioError("integrator: expected an object")
    known = {
        "method", "tolerance", "step", "horizon", "sample_interval",
        "force_mode", "collision_epsilon", "max_step",
    }
    unknown = set(raw) - known
    if unknown:
        raise ScenarioError(f"integrator: unknown fields {sorted(unknown)}")
    kwargs = {k: raw[k] for k in raw}
    try:
        return IntegratorSettings(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"integrator: {exc}") from exc


def _ic_overrides(raw) -> dict[int, tuple[float, float]] | None:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise ScenarioError("ic_overrides: expected an object keyed by body index")
    out = {}
    for key, entry in raw.items():
        if key not in ("1", "2", "3"):
            raise ScenarioError(f"ic_overrides: body index must be '1', '2', or '3', got {key!r}")
        if not isinstance(entry, dict):
            raise ScenarioError(f"ic_overrides.{key}: expected an object")
        where = f"ic_overrides.{key}"
        radius = _number(entry, "radius", where, minimum=0.0, strict=True)
        rate = _number(entry, "radial_rate", where, default=0.0)
        out[int(key)] = (radius, rate)
    return out


def load_scenario(path, dimensionless: bool = False) -> Scenario:
    """Load and validate a scenario file.

    ``dimensionless`` forces G = 1 regardless of the file contents
    (the CLI's --dimensionless flag).
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            line=exc.lineno,
        ) from exc
    if not isinstance(raw, dict):
        raise ScenarioError("scenario: top level must be an object")

    units = raw.get("units", "SI")
    if units not in UNITS:
        raise ScenarioError(f"units: expected one of {UNITS}, got {units!r}")
    if dimensionless:
        G = 1.0
    elif "G" in raw:
        G = _number(raw, "G", "scenario", minimum=0.0, strict=True)
    else:
        G = 1.0 if units == "dimensionless" else G_SI

    bodies_raw = raw.get("bodies")
    if not isinstance(bodies_raw, list) or len(bodies_raw) != 3:
        raise ScenarioError("bodies: expected a list of exactly 3 bodies")
    masses = []
    states = []
    for i, b in enumerate(bodies_raw, start=1):
        where = f"bodies[{i}]"
        if not isinstance(b, dict):
            raise ScenarioError(f"{where}: expected an object")
        masses.append(_number(b, "mass", where, minimum=0.0))
        states.append(
            BodyState(
                _vec2(b.get("position"), f"{where}.position"),
                _vec2(b.get("velocity"), f"{where}.velocity"),
            )
        )
    t0 = _number(raw, "t0", "scenario", default=0.0)

    try:
        config = SystemConfig(
            masses=tuple(masses), G=G, bodies=tuple(states), t0=t0
        )
    except ValueError as exc:
        raise ScenarioError(f"scenario: {exc}") from exc

    has_time = "time_grid" in raw
    has_theta = "theta_grid" in raw
    if has_time == has_theta:
        raise ScenarioError("scenario: exactly one of time_grid or theta_grid is required")
    time_grid = _grid(raw["time_grid"], "time_grid", False) if has_time else None
    theta_grid = _grid(raw["theta_grid"], "theta_grid", True) if has_theta else None
    if time_grid is not None and time_grid.start < t0:
        raise ScenarioError("time_grid.start: must not precede t0")

    return Scenario(
        config=config,
        units=units,
        time_grid=time_grid,
        theta_grid=theta_grid,
        settings=_settings(raw.get("integrator")),
        ic_overrides=_ic_overrides(raw.get("ic_overrides")),
    )


def apply_sweep(scenario: Scenario, param: str, value: float) -> Scenario:
    """Return a copy of the scenario with one swept parameter replaced."""
    if param not in SWEEP_PARAMS:
        raise ScenarioError(f"sweep parameter must be one of {SWEEP_PARAMS}, got {param!r}")
    cfg = scenario.config
    try:
        if param == "G":
            new_cfg = replace(cfg, G=value)
        else:
            masses = list(cfg.masses)
            masses[int(param[1]) - 1] = value
            new_cfg = replace(cfg, masses=tuple(masses))
    except ValueError as exc:
        raise ScenarioError(f"sweep {param}={value!r}: {exc}") from exc
    return replace(scenario, config=new_cfg)
