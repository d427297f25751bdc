"""Reduction of the three-body system to three two-body problems.

Each body is paired against the combined mass of the other two, placed
at their center of mass. The relative vector (partner COM minus
subject) carries the dynamics; in the barycentric frame it is exactly
anti-parallel to the subject's own position vector, which is why every
reduction is performed there (inputs are re-centered automatically).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateRotation, ZeroRadius
from .kinematics import (
    BodyState,
    PolarState,
    SystemConfig,
    cartesian_to_polar,
    is_barycentric,
    to_barycentric,
)


@dataclass(frozen=True)
class ReducedProblem:
    """Scalar two-body problem for one subject body.

    ``rel_initial`` is the polar state of the relative vector at t0;
    ``subject_radius0`` / ``subject_radial_rate0`` are the subject's own
    scalar radius and radial rate at t0 (overridable for what-if runs).
    ``mass_ratio`` is combined_mass / total_mass, the coefficient that
    maps the relative trajectory back onto the subject.
    """

    subject_index: int
    combined_mass: float
    total_mass: float
    mass_ratio: float
    rel_initial: PolarState
    subject_radius0: float
    subject_radial_rate0: float
    t0: float
    frame_shifted: bool = False


def pair_center_of_mass(config: SystemConfig, exclude: int) -> BodyState:
    """Mass-weighted center (position and velocity) of the two bodies other than ``exclude``.

    ``exclude`` is 1-based, matching subject indices everywhere else.
    """
    if exclude not in (1, 2, 3):
        raise ValueError(f"body index must be 1, 2, or 3, got {exclude}")
    others = [i for i in range(3) if i != exclude - 1]
    m = [config.masses[i] for i in others]
    total = m[0] + m[1]
    pos = (m[0] * config.bodies[others[0]].position + m[1] * config.bodies[others[1]].position) * (1.0 / total)
    vel = (m[0] * config.bodies[others[0]].velocity + m[1] * config.bodies[others[1]].velocity) * (1.0 / total)
    return BodyState(pos, vel)


def reduce(config: SystemConfig, subject: int) -> ReducedProblem:
    """Build the reduced two-body problem for one subject body.

    The input is re-centered on the barycenter first (flagged in the
    result when that actually moved the frame). Raises ZeroRadius if the
    subject sits at the origin and DegenerateRotation if the relative
    vector does not rotate.
    """
    if subject not in (1, 2, 3):
        raise ValueError(f"body index must be 1, 2, or 3, got {subject}")
    shifted = not is_barycentric(config)
    if shifted:
        config = to_barycentric(config)

    body = config.bodies[subject - 1]
    r_subj = body.position.norm()
    if r_subj == 0.0:
        raise ZeroRadius(f"body {subject} sits at the barycenter")

    partner = pair_center_of_mass(config, exclude=subject)
    rel = BodyState(
        partner.position - body.position,
        partner.velocity - body.velocity,
    )
    if rel.position.norm() == 0.0:
        raise ZeroRadius(f"relative vector for body {subject} vanishes")
    rel_polar = cartesian_to_polar(rel)
    if rel_polar.theta_dot == 0.0:
        raise DegenerateRotation(
            f"body {subject}: relative vector does not rotate (theta_dot = 0)"
        )

    combined = config.total_mass - config.masses[subject - 1]
    return ReducedProblem(
        subject_index=subject,
        combined_mass=combined,
        total_mass=config.total_mass,
        mass_ratio=combined / config.total_mass,
        rel_initial=rel_polar,
        subject_radius0=r_subj,
        subject_radial_rate0=body.position.dot(body.velocity) / r_subj,
        t0=config.t0,
        frame_shifted=shifted,
    )


def collinearity_defect(config: SystemConfig, subject: int) -> float:
    """Dot product of the subject and partner-COM unit vectors, plus one.

    Zero means exactly anti-parallel; 2 means parallel. In a barycentric
    frame this is zero to rounding for every subject, so a nonzero value
    flags a frame inconsistency rather than a model error.
    """
    if subject not in (1, 2, 3):
        raise ValueError(f"body index must be 1, 2, or 3, got {subject}")
    u_subj = config.bodies[subject - 1].position.unit()
    u_pair = pair_center_of_mass(config, exclude=subject).position.unit()
    return u_subj.dot(u_pair) + 1.0
