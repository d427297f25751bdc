import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triconic import (
    BodyState,
    PolarState,
    SystemConfig,
    Vec2,
    ZeroRadius,
    barycenter,
    cartesian_to_polar,
    polar_to_cartesian,
    to_barycentric,
    total_momentum,
)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)


def make_config(masses, positions, velocities=None):
    velocities = velocities or [(0.0, 0.0)] * 3
    bodies = tuple(
        BodyState(Vec2(*p), Vec2(*v)) for p, v in zip(positions, velocities)
    )
    return SystemConfig(masses=tuple(masses), G=1.0, bodies=bodies, t0=0.0)


class TestBarycenter:
    def test_symmetric(self):
        cfg = make_config((1, 1, 1), [(1, 0), (-1, 0), (0, 0)])
        com = barycenter(cfg)
        assert com.x == 0.0 and com.y == 0.0

    def test_weighted(self):
        cfg = make_config((2, 1, 1), [(0, 0), (4, 0), (0, 4)])
        com = barycenter(cfg)
        assert com.x == pytest.approx(1.0, abs=0) and com.y == pytest.approx(1.0, abs=0)

    def test_components_cancel(self):
        cfg = make_config((1, 1, 1), [(1, 0), (0, 1), (-1, -1)])
        com = barycenter(cfg)
        assert com.norm() < 1e-15


class TestToBarycentric:
    def test_already_centered_is_identity(self):
        cfg = make_config((1, 1, 1), [(1, 0), (-1, 0), (0, 1e-9)])
        cfg = to_barycentric(cfg)
        again = to_barycentric(cfg)
        for b1, b2 in zip(cfg.bodies, again.bodies):
            assert b1.position.x == pytest.approx(b2.position.x, abs=1e-15)
            assert b1.velocity.y == pytest.approx(b2.velocity.y, abs=1e-15)

    def test_uniform_drift_removed(self):
        cfg = make_config(
            (1, 1, 1),
            [(1, 0), (-1, 0), (0, 2)],
            [(1, 0), (1, 0), (1, 0)],
        )
        out = to_barycentric(cfg)
        for b in out.bodies:
            assert b.velocity.norm() == 0.0

    @given(st.lists(finite, min_size=18, max_size=18), st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10))
    @settings(max_examples=100, deadline=None)
    def test_barycenter_and_momentum_vanish(self, vals, m1, m2, m3):
        positions = [(vals[i], vals[i + 1]) for i in range(0, 6, 2)]
        # keep bodies apart
        positions = [(p[0] + 10 * k, p[1]) for k, p in enumerate(positions)]
        velocities = [(vals[i], vals[i + 1]) for i in range(6, 12, 2)]
        cfg = make_config((m1, m2, m3), positions, velocities)
        out = to_barycentric(cfg)
        scale = max(b.position.norm() for b in out.bodies)
        assert barycenter(out).norm() <= 1e-12 * scale
        p = total_momentum(out)
        v_scale = max(1.0, max(b.velocity.norm() for b in cfg.bodies))
        assert p.norm() <= 1e-12 * sum(cfg.masses) * v_scale


class TestPolar:
    def test_circular_setup(self):
        s = cartesian_to_polar(BodyState(Vec2(1, 0), Vec2(0, 1)))
        assert (s.r, s.theta, s.r_dot, s.theta_dot) == (1.0, 0.0, 0.0, 1.0)

    def test_retrograde(self):
        s = cartesian_to_polar(BodyState(Vec2(0, 2), Vec2(1, 0)))
        assert s.r == 2.0
        assert s.theta == pytest.approx(math.pi / 2, abs=1e-15)
        assert s.r_dot == pytest.approx(0.0, abs=1e-15)
        assert s.theta_dot == pytest.approx(-0.5, abs=1e-15)

    def test_purely_radial(self):
        s = cartesian_to_polar(BodyState(Vec2(3, 4), Vec2(0.6, 0.8)))
        assert s.r == pytest.approx(5.0, rel=1e-15)
        assert s.r_dot == pytest.approx(1.0, rel=1e-14)
        assert s.theta_dot == pytest.approx(0.0, abs=1e-16)

    def test_zero_radius_rejected(self):
        with pytest.raises(ZeroRadius):
            cartesian_to_polar(BodyState(Vec2(0, 0), Vec2(1, 0)))

    def test_polar_to_cartesian_basics(self):
        b = polar_to_cartesian(PolarState(r=1, theta=0, r_dot=0, theta_dot=1))
        assert (b.position.x, b.position.y) == (1.0, 0.0)
        assert (b.velocity.x, b.velocity.y) == pytest.approx((0.0, 1.0), abs=1e-16)
        b = polar_to_cartesian(PolarState(r=2, theta=math.pi, r_dot=0, theta_dot=0))
        assert b.position.x == pytest.approx(-2.0, rel=1e-15)
        assert b.position.y == pytest.approx(0.0, abs=1e-15)

    @given(
        st.floats(1e-6, 1e3),
        st.floats(-10, 10),
        st.floats(-5, 5),
        st.floats(-5, 5),
    )
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, r, theta, r_dot, theta_dot):
        state = PolarState(r=r, theta=theta, r_dot=r_dot, theta_dot=theta_dot)
        back = cartesian_to_polar(polar_to_cartesian(state))
        assert back.r == pytest.approx(r, rel=1e-12)
        assert back.r_dot == pytest.approx(r_dot, rel=1e-12, abs=1e-12 * (abs(r_dot) + r * abs(theta_dot) + 1e-30))
        assert back.theta_dot == pytest.approx(theta_dot, rel=1e-12, abs=1e-12 * (abs(theta_dot) + abs(r_dot) / r + 1e-30))
        # angles agree mod 2*pi
        assert math.cos(back.theta - theta) == pytest.approx(1.0, abs=1e-12)


class TestConfigValidation:
    def test_negative_mass_rejected(self):
        with pytest.raises(ValueError):
            make_config((1, -1, 1), [(1, 0), (-1, 0), (0, 1)])

    def test_two_massless_rejected(self):
        with pytest.raises(ValueError):
            make_config((1, 0, 0), [(1, 0), (-1, 0), (0, 1)])

    def test_one_massless_allowed(self):
        cfg = make_config((1, 1, 0), [(1, 0), (-1, 0), (0, 1)])
        assert cfg.masses[2] == 0.0

    def test_coincident_bodies_rejected(self):
        with pytest.raises(ValueError):
            make_config((1, 1, 1), [(1, 0), (1, 0), (0, 1)])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            Vec2(math.nan, 0.0)
        with pytest.raises(ValueError):
            Vec2(math.inf, 0.0)
