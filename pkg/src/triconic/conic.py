"""Conic radius law for the reduced two-body problem.

With u = 1/x, the reduced dynamics in the rotation angle reduce to
u'' + u = G*M/h^2 (h = x0^2 * theta_dot0 is the conserved specific
angular momentum), whose solution is the conic

    x(theta) = 1 / (k1*cos(theta - phi) + k2).

The fit enforces u(theta0) = 1/x0 and u'(theta0) = -xdot0/h; k1 >= 0
and a two-argument arctangent for phi make the representation unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DegenerateRotation, RadiusDivergence
from .reduction import ReducedProblem

ELLIPTIC = "elliptic-like"
PARABOLIC = "parabolic-like"
HYPERBOLIC = "hyperbolic-like"

#: |k2 - k1| below this fraction of k2 counts as parabolic-like.
PARABOLIC_TOL = 1e-12

#: Conic denominators at or below this fraction of (k1 + k2) diverge.
DIVERGENCE_TOL = 1e-12


@dataclass(frozen=True)
class ConicParams:
    """Fitted constants of one conic radius law (all 1/length except phi, h)."""

    c1: float
    c2: float
    k1: float
    k2: float
    phi: float
    h: float
    orbit_class: str


def classify(k1: float, k2: float) -> str:
    if abs(k2 - k1) <= PARABOLIC_TOL * k2:
        return PARABOLIC
    return ELLIPTIC if k2 > k1 else HYPERBOLIC


def fit_conic(problem: ReducedProblem, G: float) -> ConicParams:
    """Fit the conic constants from the reduced initial conditions."""
    rel = problem.rel_initial
    if rel.theta_dot == 0.0:
        raise DegenerateRotation("cannot fit a conic without rotation")
    if rel.r <= 0.0:
        raise ValueError("relative radius must be positive")

    x0 = rel.r
    theta0 = rel.theta
    h = x0 * x0 * rel.theta_dot
    k2 = G * problem.total_mass / (x0**4 * rel.theta_dot**2)

    # u = 1/x expanded about theta0: amplitude a along cos, b along sin
    a = 1.0 / x0 - k2
    b = -rel.r_dot / h
    c1 = a * math.cos(theta0) - b * math.sin(theta0)
    c2 = a * math.sin(theta0) + b * math.cos(theta0)
    k1 = math.hypot(c1, c2)
    phi = math.atan2(c2, c1) if k1 > 0.0 else 0.0
    return ConicParams(
        c1=c1, c2=c2, k1=k1, k2=k2, phi=phi, h=h, orbit_class=classify(k1, k2)
    )


def eval_radius(params: ConicParams, theta: float) -> float:
    """Radius at the given angle; raises RadiusDivergence past an escape angle."""
    den = params.k1 * math.cos(theta - params.phi) + params.k2
    if den <= DIVERGENCE_TOL * (params.k1 + params.k2):
        raise RadiusDivergence(
            f"conic denominator {den:.3e} at theta={theta:.6f} (unbound direction)"
        )
    return 1.0 / den


def eval_radius_derivative(params: ConicParams, theta: float) -> float:
    """dx/dtheta at the given angle."""
    x = eval_radius(params, theta)
    return params.k1 * math.sin(theta - params.phi) * x * x


def angular_rate(params: ConicParams, theta: float) -> float:
    """theta_dot reconstructed from conservation of h: h / x(theta)^2."""
    x = eval_radius(params, theta)
    return params.h / (x * x)


def shift_subject_angle(params: ConicParams) -> ConicParams:
    """Re-express the conic in the subject's own angle (offset by pi).

    The relative vector points opposite the subject in the barycentric
    frame, so evaluating the shifted conic at the subject angle equals
    evaluating the original at that angle minus pi.
    """
    phi = params.phi + math.pi
    return replace(params, phi=phi, c1=-params.c1, c2=-params.c2)
