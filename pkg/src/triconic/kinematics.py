"""Planar vector algebra, body states, and polar/Cartesian conversions.

Everything here is strictly 2D and works in SI units (or any coherent
unit system; a dimensionless G = 1 mode is supported by the CLI). Angles
are stored unwrapped on the continuous real line, never reduced mod 2pi,
because downstream time laws integrate over multi-revolution spans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ZeroRadius

#: CODATA gravitational constant, m^3 kg^-1 s^-2.
G_SI = 6.67430e-11


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Vec2:
    """Planar vector; reused for positions (m), velocities (m/s), etc."""

    x: float
    y: float

    def __post_init__(self):
        _require_finite("Vec2 component", self.x, self.y)

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> float:
        """Scalar (out-of-plane) cross product."""
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def unit(self) -> "Vec2":
        n = self.norm()
        if n == 0.0:
            raise ZeroRadius("cannot normalize a zero vector")
        return Vec2(self.x / n, self.y / n)


@dataclass(frozen=True)
class BodyState:
    """Position (m) and velocity (m/s) of one point mass."""

    position: Vec2
    velocity: Vec2


@dataclass(frozen=True)
class PolarState:
    """Polar coordinates of one planar vector and their rates.

    theta is continuous (unwrapped); r must stay positive wherever an
    operation divides by it.
    """

    r: float
    theta: float
    r_dot: float
    theta_dot: float

    def __post_init__(self):
        _require_finite("PolarState field", self.r, self.theta, self.r_dot, self.theta_dot)
        if self.r < 0.0:
            raise ValueError(f"radius must be >= 0, got {self.r}")


@dataclass(frozen=True)
class SystemConfig:
    """Three point masses with initial states and a shared start time.

    Masses are non-negative and every pair must have positive combined
    mass (at most one body may be massless, which models a test
    particle). Bodies must not coincide.
    """

    masses: tuple[float, float, float]
    G: float
    bodies: tuple[BodyState, BodyState, BodyState]
    t0: float = 0.0

    def __post_init__(self):
        if len(self.masses) != 3 or len(self.bodies) != 3:
            raise ValueError("exactly three bodies are required")
        _require_finite("mass", *self.masses)
        _require_finite("G", self.G)
        _require_finite("t0", self.t0)
        if self.G <= 0.0:
            raise ValueError(f"G must be positive, got {self.G}")
        for i, m in enumerate(self.masses):
            if m < 0.0:
                raise ValueError(f"mass of body {i + 1} must be >= 0, got {m}")
        total = sum(self.masses)
        for i in range(3):
            if total - self.masses[i] <= 0.0:
                raise ValueError("at most one body may be massless")
        for i in range(3):
            for j in range(i + 1, 3):
                if (self.bodies[i].position - self.bodies[j].position).norm() == 0.0:
                    raise ValueError(f"bodies {i + 1} and {j + 1} coincide")

    @property
    def total_mass(self) -> float:
        return self.masses[0] + self.masses[1] + self.masses[2]


def barycenter(config: SystemConfig) -> Vec2:
    """Mass-weighted mean position of the three bodies."""
    sx = sy = 0.0
    for m, b in zip(config.masses, config.bodies):
        sx += m * b.position.x
        sy += m * b.position.y
    return Vec2(sx / config.total_mass, sy / config.total_mass)


def _mean_velocity(config: SystemConfig) -> Vec2:
    sx = sy = 0.0
    for m, b in zip(config.masses, config.bodies):
        sx += m * b.velocity.x
        sy += m * b.velocity.y
    return Vec2(sx / config.total_mass, sy / config.total_mass)


def to_barycentric(config: SystemConfig) -> SystemConfig:
    """Shift positions and velocities so the barycenter and total momentum vanish.

    Idempotent to within floating-point rounding of the subtraction.
    """
    com = barycenter(config)
    vel = _mean_velocity(config)
    bodies = tuple(
        BodyState(b.position - com, b.velocity - vel) for b in config.bodies
    )
    return replace(config, bodies=bodies)


def is_barycentric(config: SystemConfig, rel_tol: float = 1e-12) -> bool:
    """True when the barycenter magnitude is below rel_tol x the largest radius."""
    scale = max(b.position.norm() for b in config.bodies)
    return barycenter(config).norm() <= rel_tol * scale


def cartesian_to_polar(state: BodyState) -> PolarState:
    """Polar decomposition of one planar state.

    r_dot is the radial velocity component, theta_dot the angular rate
    from the scalar cross product. Raises ZeroRadius at the origin.
    """
    p, v = state.position, state.velocity
    r = p.norm()
    if r == 0.0:
        raise ZeroRadius("polar decomposition undefined at the origin")
    return PolarState(
        r=r,
        theta=math.atan2(p.y, p.x),
        r_dot=p.dot(v) / r,
        theta_dot=p.cross(v) / (r * r),
    )


def polar_to_cartesian(state: PolarState) -> BodyState:
    """Inverse of cartesian_to_polar (round-trips to ~1e-12 relative)."""
    c, s = math.cos(state.theta), math.sin(state.theta)
    r = state.r
    return BodyState(
        position=Vec2(r * c, r * s),
        velocity=Vec2(
            state.r_dot * c - r * state.theta_dot * s,
            state.r_dot * s + r * state.theta_dot * c,
        ),
    )
