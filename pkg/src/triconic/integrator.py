"""Reference integration of the exact planar three-body dynamics.

This is the ground-truth oracle the approximation pipeline is judged
against: pairwise Newtonian gravity integrated by an adaptive embedded
Runge-Kutta 5(4) pair with PI step control (fixed-step RK4 is kept for
convergence-order checks). An alternate force mode replaces, for each
body, the other two point masses by their combined mass at their center
of mass, so the error budget can be split into force-replacement error
versus closed-form-solution error.

Sample times are hit exactly by clamping steps, so no interpolation
enters the reported series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .assembly import ORACLE, TrajectorySeries
from .errors import Collision, StepFailure
from .kinematics import BodyState, SystemConfig, Vec2

FORCE_MODES = {"pairwise": kernels.FORCE_PAIRWISE, "pair-com": kernels.FORCE_PAIR_COM}


@dataclass(frozen=True)
class IntegratorSettings:
    """Integration method, accuracy, horizon, and sampling controls.

    ``tolerance`` is the relative tolerance of the adaptive method; the
    absolute tolerance is derived as ``atol_scale`` times the initial
    state magnitude. ``collision_epsilon`` defaults to 1e-6 times the
    initial minimum pairwise distance.
    """

    method: str = "rk45"
    tolerance: float = 1e-10
    step: float | None = None
    horizon: float | None = None
    sample_interval: float | None = None
    force_mode: str = "pairwise"
    collision_epsilon: float | None = None
    max_step: float = math.inf
    atol_scale: float = 1e-12

    def __post_init__(self):
        if self.method not in ("rk45", "rk4"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.force_mode not in FORCE_MODES:
            raise ValueError(f"unknown force mode {self.force_mode!r}")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")
        if self.method == "rk4" and (self.step is None or self.step <= 0.0):
            raise ValueError("rk4 requires a positive step")
        for name in ("horizon", "sample_interval"):
            v = getattr(self, name)
            if v is not None and v <= 0.0:
                raise ValueError(f"{name} must be positive")
        if (
            self.horizon is not None
            and self.sample_interval is not None
            and self.sample_interval > self.horizon
        ):
            raise ValueError("sample_interval must not exceed horizon")


@dataclass(frozen=True)
class ConservationReport:
    relative_energy_drift: float
    momentum_drift: float
    angular_momentum_drift: float


@dataclass(frozen=True)
class IntegrationResult:
    series: tuple[TrajectorySeries, TrajectorySeries, TrajectorySeries]
    conservation: ConservationReport
    t_final: float
    steps_accepted: int
    steps_rejected: int
    completed: bool
    final_state: np.ndarray  # flat [positions..., velocities...] at the last sample


def bodies_from_state(y) -> tuple[BodyState, BodyState, BodyState]:
    """Unpack a flat state vector into three body states."""
    return tuple(
        BodyState(
            Vec2(float(y[2 * i]), float(y[2 * i + 1])),
            Vec2(float(y[6 + 2 * i]), float(y[6 + 2 * i + 1])),
        )
        for i in range(3)
    )


def state_vector(config: SystemConfig) -> np.ndarray:
    """Flatten the config into [positions..., velocities...]."""
    y = np.empty(12)
    for i, b in enumerate(config.bodies):
        y[2 * i] = b.position.x
        y[2 * i + 1] = b.position.y
        y[6 + 2 * i] = b.velocity.x
        y[6 + 2 * i + 1] = b.velocity.y
    return y


def accelerations(config: SystemConfig, mode: str = "pairwise") -> tuple[Vec2, Vec2, Vec2]:
    """Accelerations of the three bodies under the chosen force model."""
    out = np.empty(12)
    kernels.rhs(np.asarray(config.masses), config.G, state_vector(config), FORCE_MODES[mode], out)
    return tuple(Vec2(out[6 + 2 * i], out[6 + 2 * i + 1]) for i in range(3))


def total_energy(config: SystemConfig) -> float:
    """Kinetic plus pairwise potential energy."""
    e = 0.0
    for m, b in zip(config.masses, config.bodies):
        e += 0.5 * m * b.velocity.dot(b.velocity)
    for i in range(3):
        for j in range(i + 1, 3):
            d = (config.bodies[i].position - config.bodies[j].position).norm()
            e -= config.G * config.masses[i] * config.masses[j] / d
    return e


def total_momentum(config: SystemConfig) -> Vec2:
    p = Vec2(0.0, 0.0)
    for m, b in zip(config.masses, config.bodies):
        p = p + m * b.velocity
    return p


def total_angular_momentum(config: SystemConfig) -> float:
    """Scalar (out-of-plane) angular momentum about the origin."""
    return sum(
        m * b.position.cross(b.velocity) for m, b in zip(config.masses, config.bodies)
    )


def _energy_state(masses, G, y) -> float:
    e = 0.0
    for i in range(3):
        e += 0.5 * masses[i] * (y[6 + 2 * i] ** 2 + y[6 + 2 * i + 1] ** 2)
    for i in range(3):
        for j in range(i + 1, 3):
            d = math.hypot(y[2 * j] - y[2 * i], y[2 * j + 1] - y[2 * i + 1])
            e -= G * masses[i] * masses[j] / d
    return e


def _momentum_state(masses, y) -> tuple[float, float]:
    px = sum(masses[i] * y[6 + 2 * i] for i in range(3))
    py = sum(masses[i] * y[6 + 2 * i + 1] for i in range(3))
    return px, py


def _angular_momentum_state(masses, y) -> float:
    return sum(
        masses[i] * (y[2 * i] * y[6 + 2 * i + 1] - y[2 * i + 1] * y[6 + 2 * i])
        for i in range(3)
    )


def _conservation(masses, G, y0, y1) -> ConservationReport:
    e0, e1 = _energy_state(masses, G, y0), _energy_state(masses, G, y1)
    k0 = sum(0.5 * masses[i] * (y0[6 + 2 * i] ** 2 + y0[6 + 2 * i + 1] ** 2) for i in range(3))
    e_scale = max(abs(e0), 1e-12 * (2.0 * k0 + abs(e0)), 5e-324)
    p0x, p0y = _momentum_state(masses, y0)
    p1x, p1y = _momentum_state(masses, y1)
    l0, l1 = _angular_momentum_state(masses, y0), _angular_momentum_state(masses, y1)
    char_l = sum(
        masses[i]
        * math.hypot(y0[2 * i], y0[2 * i + 1])
        * math.hypot(y0[6 + 2 * i], y0[6 + 2 * i + 1])
        for i in range(3)
    )
    l_scale = max(abs(l0), 1e-12 * char_l, 5e-324)
    return ConservationReport(
        relative_energy_drift=abs(e1 - e0) / e_scale,
        momentum_drift=math.hypot(p1x - p0x, p1y - p0y),
        angular_momentum_drift=abs(l1 - l0) / l_scale,
    )


def sample_times(config: SystemConfig, settings: IntegratorSettings) -> np.ndarray:
    """Uniform sample grid from the settings' horizon and interval."""
    if settings.horizon is None or settings.sample_interval is None:
        raise ValueError("horizon and sample_interval are required to derive a grid")
    n = int(math.floor(settings.horizon / settings.sample_interval + 1e-9))
    ts = config.t0 + settings.sample_interval * np.arange(n + 1)
    end = config.t0 + settings.horizon
    if end - ts[-1] > 1e-12 * settings.horizon:
        ts = np.append(ts, end)
    return ts


def _series_from_rows(ts, Y, n_done) -> tuple[TrajectorySeries, ...]:
    out = []
    for i in range(3):
        xs = Y[:n_done, 2 * i].copy()
        ys = Y[:n_done, 2 * i + 1].copy()
        r = np.hypot(xs, ys)
        theta = np.unwrap(np.arctan2(ys, xs)) if n_done else np.empty(0)
        out.append(
            TrajectorySeries(
                subject_index=i + 1,
                t=np.asarray(ts[:n_done], dtype=float).copy(),
                theta=theta,
                r=r,
                x=xs,
                y=ys,
                source=ORACLE,
                method=None,
            )
        )
    return tuple(out)


def integrate(
    config: SystemConfig,
    settings: IntegratorSettings = IntegratorSettings(),
    times=None,
) -> IntegrationResult:
    """Integrate the exact dynamics, sampling at the given (or derived) times.

    Raises Collision or StepFailure with the partial result attached when
    the run aborts; the partial series are truncated at the abort time.
    """
    ts = np.asarray(times, dtype=float) if times is not None else sample_times(config, settings)
    masses = np.asarray(config.masses, dtype=float)
    y0 = state_vector(config)

    eps = settings.collision_epsilon
    if eps is None:
        eps = 1e-6 * kernels.min_pair_distance(y0)

    mode = FORCE_MODES[settings.force_mode]
    if settings.method == "rk45":
        atol = settings.atol_scale * max(1.0, float(np.max(np.abs(y0))))
        Y, n_done, status, t_last, nacc, nrej = kernels.integrate_adaptive(
            masses, config.G, y0, config.t0, ts,
            settings.tolerance, atol, mode, eps, settings.max_step,
        )
    else:
        Y, n_done, status, t_last, nacc = kernels.integrate_rk4(
            masses, config.G, y0, config.t0, ts, settings.step, mode, eps
        )
        nrej = 0

    series = _series_from_rows(ts, Y, n_done)
    y_last = Y[n_done - 1] if n_done else y0
    result = IntegrationResult(
        series=series,
        conservation=_conservation(masses, config.G, y0, y_last),
        t_final=t_last,
        steps_accepted=nacc,
        steps_rejected=nrej,
        completed=status == kernels.STATUS_OK,
        final_state=np.array(y_last, dtype=float),
    )
    if status == kernels.STATUS_COLLISION:
        raise Collision(
            f"pairwise distance fell below {eps:.3e} at t={t_last!r}",
            t=t_last,
            partial=result,
        )
    if status == kernels.STATUS_STEP_UNDERFLOW:
        raise StepFailure(
            f"step size underflowed at t={t_last!r}", t=t_last, partial=result
        )
    return result
