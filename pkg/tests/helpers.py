"""Shared scenario builders for the test suite."""

from __future__ import annotations

import math

import numpy as np

from triconic import (
    BodyState,
    PolarState,
    SystemConfig,
    Vec2,
    to_barycentric,
)
from triconic.conic import ConicParams, classify
from triconic.reduction import ReducedProblem


def random_barycentric_config(rng: np.random.Generator, G: float = 1.0) -> SystemConfig:
    """Random well-separated three-body config, re-centered on the barycenter.

    Bodies sit in distinct 120-degree sectors on a loose ring with
    mostly tangential, sub-circular velocities, so short oracle runs
    stay collision-free.
    """
    masses = tuple(rng.uniform(0.5, 2.0, 3))
    base = rng.uniform(0.0, 2.0 * math.pi)
    total = sum(masses)
    bodies = []
    for k in range(3):
        ang = base + 2.0 * math.pi * k / 3.0 + rng.uniform(-0.4, 0.4)
        radius = rng.uniform(0.9, 2.5)
        pos = Vec2(radius * math.cos(ang), radius * math.sin(ang))
        v_mag = rng.uniform(0.3, 0.7) * math.sqrt(G * total / radius)
        v_ang = ang + math.pi / 2.0 + rng.uniform(-0.2, 0.2)
        vel = Vec2(v_mag * math.cos(v_ang), v_mag * math.sin(v_ang))
        bodies.append(BodyState(pos, vel))
    return to_barycentric(
        SystemConfig(masses=masses, G=G, bodies=tuple(bodies), t0=0.0)
    )


def binary_with_far_body(
    m3: float = 0.0,
    ecc: float = 0.0,
    a: float = 1.0,
    far: float = 40.0,
    G: float = 1.0,
) -> SystemConfig:
    """Equal-mass binary at +-a with relative eccentricity ``ecc``, third body far away.

    With m3 = 0 the binary is an exact two-body system and the third
    body is a test particle.
    """
    # periapsis start: v_rel = v_circ * sqrt(1 + e)
    s = 2.0 * a
    v_rel = math.sqrt(G * 2.0 / s) * math.sqrt(1.0 + ecc)
    bodies = (
        BodyState(Vec2(a, 0.0), Vec2(0.0, 0.5 * v_rel)),
        BodyState(Vec2(-a, 0.0), Vec2(0.0, -0.5 * v_rel)),
        BodyState(Vec2(far, 0.2 * far), Vec2(-0.02, 0.12)),
    )
    return to_barycentric(
        SystemConfig(masses=(1.0, 1.0, m3), G=G, bodies=bodies, t0=0.0)
    )


def binary_period(config: SystemConfig) -> float:
    """Two-body period of bodies 1-2 from their relative state."""
    rel_pos = config.bodies[0].position - config.bodies[1].position
    rel_vel = config.bodies[0].velocity - config.bodies[1].velocity
    mu = config.G * (config.masses[0] + config.masses[1])
    r = rel_pos.norm()
    sma = 1.0 / (2.0 / r - rel_vel.dot(rel_vel) / mu)
    return 2.0 * math.pi * math.sqrt(sma**3 / mu)


def lagrange_config(G: float = 1.0, m: float = 1.0, radius: float = 1.0) -> SystemConfig:
    """Equal masses on an equilateral triangle in rigid circular rotation."""
    side = math.sqrt(3.0) * radius
    omega = math.sqrt(G * 3.0 * m / side**3)
    bodies = []
    for k in range(3):
        ang = math.pi / 2.0 + 2.0 * math.pi * k / 3.0
        pos = Vec2(radius * math.cos(ang), radius * math.sin(ang))
        vel = Vec2(-omega * pos.y, omega * pos.x)
        bodies.append(BodyState(pos, vel))
    return SystemConfig(masses=(m, m, m), G=G, bodies=tuple(bodies), t0=0.0)


def hierarchical_config(m3_over_total: float, d: float = 1.0, far: float = 12.0, G: float = 1.0) -> SystemConfig:
    """Tight equal-mass binary plus a light distant third body (total mass 1).

    ``m3_over_total`` fixes m3 / (m1+m2+m3); the binary and the outer
    orbit both start circular in their respective two-body pictures.
    """
    m3 = m3_over_total
    m12 = 1.0 - m3
    m1 = m2 = 0.5 * m12
    v_in = 0.5 * math.sqrt(G * m12 / d)  # per-body speed of the circular binary
    v_out_rel = math.sqrt(G * 1.0 / far)
    bodies = (
        BodyState(Vec2(0.5 * d, 0.0), Vec2(0.0, v_in)),
        BodyState(Vec2(-0.5 * d, 0.0), Vec2(0.0, -v_in)),
        BodyState(Vec2(far, 0.0), Vec2(0.0, v_out_rel * m12)),
    )
    cfg = SystemConfig(masses=(m1, m2, m3), G=G, bodies=bodies, t0=0.0)
    # give bodies 1-2 the recoil so total momentum is ~zero before re-centering
    recoil = Vec2(0.0, -v_out_rel * m3)
    bodies = (
        BodyState(cfg.bodies[0].position, cfg.bodies[0].velocity + recoil),
        BodyState(cfg.bodies[1].position, cfg.bodies[1].velocity + recoil),
        cfg.bodies[2],
    )
    return to_barycentric(
        SystemConfig(masses=(m1, m2, m3), G=G, bodies=bodies, t0=0.0)
    )


def synthetic_problem(
    rng: np.random.Generator,
    ecc: float | None = None,
    k2: float | None = None,
    G: float = 1.0,
) -> ReducedProblem:
    """Reduced problem built backwards from chosen conic constants.

    Gives direct control over eccentricity (k1/k2) and scale for
    property tests; the resulting problem is internally consistent with
    fit_conic, i.e. refitting recovers the same conic.
    """
    if ecc is None:
        ecc = rng.uniform(0.0, 0.9)
    if k2 is None:
        k2 = 1.0 / rng.uniform(200.0, 800.0)
    k1 = ecc * k2
    phi = rng.uniform(-math.pi, math.pi)
    theta0 = rng.uniform(-math.pi, math.pi)
    h = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0) / k2
    x0 = 1.0 / (k1 * math.cos(theta0 - phi) + k2)
    theta_dot0 = h / (x0 * x0)
    xdot0 = h * k1 * math.sin(theta0 - phi)
    total_mass = k2 * h * h / G
    return ReducedProblem(
        subject_index=1,
        combined_mass=0.5 * total_mass,
        total_mass=total_mass,
        mass_ratio=0.5,
        rel_initial=PolarState(r=x0, theta=theta0, r_dot=xdot0, theta_dot=theta_dot0),
        subject_radius0=0.5 * x0,
        subject_radial_rate0=0.5 * xdot0,
        t0=0.0,
    )


def conic_direct(k1: float, k2: float, phi: float = 0.0, h: float = 1.0) -> ConicParams:
    """ConicParams straight from constants (c1/c2 consistent with k1, phi)."""
    return ConicParams(
        c1=k1 * math.cos(phi),
        c2=k1 * math.sin(phi),
        k1=k1,
        k2=k2,
        phi=phi,
        h=h,
        orbit_class=classify(k1, k2),
    )
