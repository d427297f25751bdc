"""Approximation-quality metrics.

Approximate and oracle series are compared row-by-row on a shared time
grid (the approximation is sampled by inverting its time law, so no
interpolation error enters the report). Regime checks flag samples
whose finite-difference angular rate reaches 1 rad/s, the bound under
which the underlying reduction is justified; boundedness is reported as
the maximum radius seen.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assembly import TrajectorySeries
from .errors import GridMismatch
from .integrator import ConservationReport
from .kinematics import SystemConfig

#: Angular-rate bound (rad/s) above which a sample is flagged.
ANGULAR_RATE_LIMIT = 1.0

#: Two grids sharing samples must agree to this many seconds.
GRID_TOL = 1e-12


@dataclass(frozen=True)
class RegimeFlag:
    t: float
    body: int
    kind: str
    value: float


@dataclass(frozen=True)
class BodyErrorStats:
    body: int
    max_rel_radial_error: float
    mean_rel_radial_error: float
    max_position_error: float
    max_radius: float


@dataclass(frozen=True)
class BodyErrorSeries:
    """Per-row comparison errors for one body (feeds the CSV writer)."""

    body: int
    t: np.ndarray
    rel_radial_error: np.ndarray
    position_error: np.ndarray


@dataclass(frozen=True)
class ComparisonReport:
    per_body: tuple[BodyErrorStats, ...]
    rows: tuple[BodyErrorSeries, ...]
    collinearity_t: np.ndarray
    collinearity_defect: np.ndarray
    regime_flags: tuple[RegimeFlag, ...]
    conservation: ConservationReport | None


def regime_check(series: TrajectorySeries) -> tuple[tuple[RegimeFlag, ...], float]:
    """Flags for every sample with |theta_dot| >= 1 rad/s, plus max radius.

    theta_dot is estimated by central differences on the sampled series
    (one-sided at the endpoints).
    """
    n = len(series)
    if n == 0:
        raise ValueError("cannot regime-check an empty series")
    max_radius = float(np.max(series.r))
    if n == 1:
        return (), max_radius
    rate = np.empty(n)
    rate[1:-1] = (series.theta[2:] - series.theta[:-2]) / (series.t[2:] - series.t[:-2])
    rate[0] = (series.theta[1] - series.theta[0]) / (series.t[1] - series.t[0])
    rate[-1] = (series.theta[-1] - series.theta[-2]) / (series.t[-1] - series.t[-2])
    flags = tuple(
        RegimeFlag(
            t=float(series.t[k]),
            body=series.subject_index,
            kind="angular_rate",
            value=float(rate[k]),
        )
        for k in np.nonzero(np.abs(rate) >= ANGULAR_RATE_LIMIT)[0]
    )
    return flags, max_radius


def collinearity_series(
    oracle: tuple[TrajectorySeries, TrajectorySeries, TrajectorySeries],
    config: SystemConfig,
) -> tuple[np.ndarray, np.ndarray]:
    """Worst collinearity defect across subjects at each oracle sample.

    Exact anti-parallelism (defect 0) holds in the barycentric frame, so
    the series measures frame consistency plus integrator drift only.
    """
    m = np.asarray(config.masses, dtype=float)
    t = oracle[0].t
    n = len(t)
    defect = np.zeros(n)
    pos = np.stack([np.column_stack([s.x, s.y]) for s in oracle])  # (3, n, 2)
    for subject in range(3):
        others = [j for j in range(3) if j != subject]
        pair = (
            m[others[0]] * pos[others[0]] + m[others[1]] * pos[others[1]]
        ) / (m[others[0]] + m[others[1]])
        n_subj = np.linalg.norm(pos[subject], axis=1)
        n_pair = np.linalg.norm(pair, axis=1)
        # a pair COM exactly at the origin (symmetric massless-third
        # degeneracy) has no direction; skip those samples
        ok = (n_subj > 0.0) & (n_pair > 0.0)
        dots = np.sum(pos[subject] * pair, axis=1)
        d = np.where(ok, np.abs(dots / np.where(ok, n_subj * n_pair, 1.0) + 1.0), 0.0)
        defect = np.maximum(defect, d)
    return t.copy(), defect


def compare(
    approx: tuple[TrajectorySeries, TrajectorySeries, TrajectorySeries],
    oracle: tuple[TrajectorySeries, TrajectorySeries, TrajectorySeries],
    config: SystemConfig,
    conservation: ConservationReport | None = None,
) -> ComparisonReport:
    """Per-body error statistics of the approximation against the oracle.

    Both inputs must be sampled on the same time grid (GridMismatch
    otherwise). Regime flags are computed on the oracle series, i.e. on
    the actual motion the regime assumptions are about.
    """
    for a, o in zip(approx, oracle):
        if a is None or o is None:
            raise ValueError("compare requires all six series")
        if len(a) != len(o):
            raise GridMismatch(
                f"body {o.subject_index}: {len(a)} vs {len(o)} samples"
            )
        if len(a) and np.max(np.abs(a.t - o.t)) > GRID_TOL:
            raise GridMismatch(
                f"body {o.subject_index}: time grids differ beyond {GRID_TOL} s"
            )

    stats = []
    rows = []
    flags: list[RegimeFlag] = []
    for a, o in zip(approx, oracle):
        if len(a):
            rel = np.abs(a.r - o.r) / o.r
            pos_err = np.hypot(a.x - o.x, a.y - o.y)
            body_flags, max_radius = regime_check(o)
            flags.extend(body_flags)
            stats.append(
                BodyErrorStats(
                    body=o.subject_index,
                    max_rel_radial_error=float(np.max(rel)),
                    mean_rel_radial_error=float(np.mean(rel)),
                    max_position_error=float(np.max(pos_err)),
                    max_radius=max_radius,
                )
            )
        else:
            rel = np.empty(0)
            pos_err = np.empty(0)
            stats.append(BodyErrorStats(o.subject_index, 0.0, 0.0, 0.0, 0.0))
        rows.append(
            BodyErrorSeries(
                body=o.subject_index,
                t=o.t.copy(),
                rel_radial_error=rel,
                position_error=pos_err,
            )
        )

    if len(oracle[0]):
        col_t, col_d = collinearity_series(oracle, config)
    else:
        col_t, col_d = np.empty(0), np.empty(0)
    return ComparisonReport(
        per_body=tuple(stats),
        rows=tuple(rows),
        collinearity_t=col_t,
        collinearity_defect=col_d,
        regime_flags=tuple(flags),
        conservation=conservation,
    )
