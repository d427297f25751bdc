"""Closed-form conic approximations for planar three-body trajectories.

Each body is reduced to a two-body problem against the combined mass of
the other pair at their center of mass; the relative motion is solved
as a conic with an explicit time law, then mapped back onto the body.
A reference integrator of the exact dynamics and comparison metrics
quantify how good the approximation is for a given scenario.
"""

from ._kernels import BACKEND_NAME as kernel_backend
from .assembly import (
    AssemblyFailure,
    AssemblyResult,
    BodyPipeline,
    TrajectorySeries,
    assemble_all,
    build_pipeline,
    radius_of_subject,
    trajectory_vs_angle,
)
from .conic import (
    ConicParams,
    angular_rate,
    eval_radius,
    eval_radius_derivative,
    fit_conic,
    shift_subject_angle,
)
from .errors import (
    Collision,
    DegenerateRotation,
    GridMismatch,
    QuadratureFailure,
    RadiusDivergence,
    ScenarioError,
    StepFailure,
    TriconicError,
    Unreachable,
    ZeroRadius,
)
from .integrator import (
    ConservationReport,
    IntegrationResult,
    IntegratorSettings,
    accelerations,
    integrate,
    total_angular_momentum,
    total_energy,
    total_momentum,
)
from .kinematics import (
    G_SI,
    BodyState,
    PolarState,
    SystemConfig,
    Vec2,
    barycenter,
    cartesian_to_polar,
    is_barycentric,
    polar_to_cartesian,
    to_barycentric,
)
from .metrics import ComparisonReport, RegimeFlag, compare, regime_check
from .reduction import ReducedProblem, collinearity_defect, pair_center_of_mass, reduce
from .scenario import Scenario, apply_sweep, load_scenario
from .timelaw import TimeLaw, make_time_law, period, theta_at, time_at

__version__ = "0.1.0"

__all__ = [
    "AssemblyFailure",
    "AssemblyResult",
    "BodyPipeline",
    "BodyState",
    "Collision",
    "ComparisonReport",
    "ConicParams",
    "ConservationReport",
    "DegenerateRotation",
    "G_SI",
    "GridMismatch",
    "IntegrationResult",
    "IntegratorSettings",
    "PolarState",
    "QuadratureFailure",
    "RadiusDivergence",
    "ReducedProblem",
    "RegimeFlag",
    "Scenario",
    "ScenarioError",
    "StepFailure",
    "SystemConfig",
    "TimeLaw",
    "TrajectorySeries",
    "TriconicError",
    "Unreachable",
    "Vec2",
    "ZeroRadius",
    "accelerations",
    "angular_rate",
    "apply_sweep",
    "assemble_all",
    "barycenter",
    "build_pipeline",
    "cartesian_to_polar",
    "collinearity_defect",
    "compare",
    "eval_radius",
    "eval_radius_derivative",
    "fit_conic",
    "integrate",
    "is_barycentric",
    "kernel_backend",
    "load_scenario",
    "make_time_law",
    "pair_center_of_mass",
    "period",
    "polar_to_cartesian",
    "radius_of_subject",
    "reduce",
    "regime_check",
    "shift_subject_angle",
    "theta_at",
    "time_at",
    "to_barycentric",
    "total_angular_momentum",
    "total_energy",
    "total_momentum",
    "trajectory_vs_angle",
]
