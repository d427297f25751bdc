"""Assembly of approximate trajectories for all three bodies.

Per body: reduce against the partner pair, fit the conic, re-express it
in the subject's own angle, build the time law, then sample either on a
time grid (inverting the law) or directly on an angle grid. The
subject radius combines the relative conic with the linear drift terms
fixed by the initial scalars; for barycentric-consistent initial
conditions those drift terms cancel and the radius is just
mass_ratio * x(theta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .conic import ConicParams, eval_radius, fit_conic, shift_subject_angle
from .errors import TriconicError
from .kinematics import SystemConfig, is_barycentric, to_barycentric
from .reduction import ReducedProblem, reduce
from .timelaw import TimeLaw, make_time_law, theta_at, time_at

APPROXIMATE = "approximate"
ORACLE = "oracle"


@dataclass(frozen=True)
class TrajectorySeries:
    """Sampled trajectory of one body, stored column-wise.

    ``theta`` is continuous (unwrapped); ``t`` is strictly increasing
    for time-grid sampling. ``method`` records how times were obtained
    (closed-form or quadrature) and is None for oracle series.
    """

    subject_index: int
    t: np.ndarray
    theta: np.ndarray
    r: np.ndarray
    x: np.ndarray
    y: np.ndarray
    source: str
    method: str | None = None

    def __len__(self) -> int:
        return len(self.t)

    def rows(self):
        """Iterate (t, theta, r, x, y) tuples in order."""
        return zip(self.t, self.theta, self.r, self.x, self.y)


@dataclass(frozen=True)
class BodyPipeline:
    """Reduced problem, subject-angle conic, and time law for one body."""

    problem: ReducedProblem
    conic: ConicParams
    law: TimeLaw


@dataclass(frozen=True)
class AssemblyFailure:
    body: int
    stage: str
    error: TriconicError

    def __str__(self) -> str:
        return f"body {self.body} failed at stage {self.stage}: {type(self.error).__name__}: {self.error}"


@dataclass(frozen=True)
class AssemblyResult:
    """Per-body series (None where that body's pipeline failed)."""

    series: tuple[TrajectorySeries | None, TrajectorySeries | None, TrajectorySeries | None]
    failures: tuple[AssemblyFailure, ...]
    frame_shifted: bool

    @property
    def ok(self) -> bool:
        return not self.failures


IcOverrides = dict[int, tuple[float, float]]


def build_pipeline(
    config: SystemConfig, subject: int, ic_overrides: IcOverrides | None = None
) -> BodyPipeline:
    """Reduce, fit, shift, and anchor the time law for one subject.

    ``config`` must already be barycentric (assemble_all re-centers once
    for all three bodies). ``ic_overrides`` maps subject index to
    (radius0, radial_rate0) replacements for what-if studies.
    """
    stage = "reduce"
    try:
        problem = reduce(config, subject)
        if ic_overrides and subject in ic_overrides:
            radius0, radial_rate0 = ic_overrides[subject]
            problem = replace(
                problem, subject_radius0=radius0, subject_radial_rate0=radial_rate0
            )
        stage = "fit-conic"
        rel_conic = fit_conic(problem, config.G)
        subj_conic = shift_subject_angle(rel_conic)
        stage = "time-law"
        pos = config.bodies[subject - 1].position
        theta_i0 = math.atan2(pos.y, pos.x)
        law = make_time_law(subj_conic, theta_i0, config.t0)
    except TriconicError as exc:
        exc.stage = stage  # lets callers report where the pipeline broke
        raise
    return BodyPipeline(problem=problem, conic=subj_conic, law=law)


def radius_of_subject(
    problem: ReducedProblem, params: ConicParams, law: TimeLaw, theta_i: float
) -> float:
    """Subject radius at its own angle theta_i.

    Combines the scaled relative conic with the drift terms fixed by the
    subject's initial scalars; the drift vanishes identically when those
    scalars are barycentric-consistent.
    """
    rho = problem.mass_ratio
    x0 = problem.rel_initial.r
    xdot0 = problem.rel_initial.r_dot
    t = time_at(law, theta_i)
    x_rel = eval_radius(params, theta_i)
    slope = problem.subject_radial_rate0 - rho * xdot0
    return (
        problem.subject_radius0
        - rho * x0
        + (rho * xdot0 - problem.subject_radial_rate0) * problem.t0
        + slope * t
        + rho * x_rel
    )


def _sample_on_times(pipe: BodyPipeline, times: np.ndarray, subject: int) -> TrajectorySeries:
    n = len(times)
    theta = np.empty(n)
    r = np.empty(n)
    for k, t in enumerate(times):
        theta[k] = theta_at(pipe.law, float(t))
        r[k] = radius_of_subject(pipe.problem, pipe.conic, pipe.law, theta[k])
    return TrajectorySeries(
        subject_index=subject,
        t=np.asarray(times, dtype=float),
        theta=theta,
        r=r,
        x=r * np.cos(theta),
        y=r * np.sin(theta),
        source=APPROXIMATE,
        method=pipe.law.method,
    )


def assemble_all(
    config: SystemConfig,
    time_grid,
    ic_overrides: IcOverrides | None = None,
) -> AssemblyResult:
    """Approximate trajectories of all three bodies on a shared time grid.

    A failure in one body's pipeline is recorded and does not abort the
    others; the corresponding series slot is None.
    """
    times = np.asarray(time_grid, dtype=float)
    if len(times) > 1 and not np.all(np.diff(times) > 0.0):
        raise ValueError("time grid must be strictly increasing")
    shifted = not is_barycentric(config)
    cfg = to_barycentric(config) if shifted else config

    series: list[TrajectorySeries | None] = [None, None, None]
    failures: list[AssemblyFailure] = []
    for subject in (1, 2, 3):
        try:
            pipe = build_pipeline(cfg, subject, ic_overrides)
            series[subject - 1] = _sample_on_times(pipe, times, subject)
        except TriconicError as exc:
            stage = getattr(exc, "stage", "sample")
            failures.append(AssemblyFailure(body=subject, stage=stage, error=exc))
    return AssemblyResult(
        series=tuple(series), failures=tuple(failures), frame_shifted=shifted
    )


def trajectory_vs_angle(
    config: SystemConfig,
    subject: int,
    theta_grid,
    ic_overrides: IcOverrides | None = None,
) -> TrajectorySeries:
    """Sample one body directly on a grid of its own angles."""
    thetas = np.asarray(theta_grid, dtype=float)
    cfg = to_barycentric(config) if not is_barycentric(config) else config
    pipe = build_pipeline(cfg, subject, ic_overrides)
    n = len(thetas)
    t = np.empty(n)
    r = np.empty(n)
    for k, th in enumerate(thetas):
        t[k] = time_at(pipe.law, float(th))
        r[k] = radius_of_subject(pipe.problem, pipe.conic, pipe.law, float(th))
    return TrajectorySeries(
        subject_index=subject,
        t=t,
        theta=thetas.copy(),
        r=r,
        x=r * np.cos(thetas),
        y=r * np.sin(thetas),
        source=APPROXIMATE,
        method=pipe.law.method,
    )
