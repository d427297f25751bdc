import math

import numpy as np
import pytest

from triconic import (
    BodyState,
    DegenerateRotation,
    SystemConfig,
    Vec2,
    collinearity_defect,
    pair_center_of_mass,
    reduce,
    to_barycentric,
)
from helpers import lagrange_config, random_barycentric_config


def make_config(masses, positions, velocities=None, barycentric=False):
    velocities = velocities or [(0.1, 0.2), (-0.2, 0.1), (0.05, -0.3)]
    bodies = tuple(
        BodyState(Vec2(*p), Vec2(*v)) for p, v in zip(positions, velocities)
    )
    cfg = SystemConfig(masses=tuple(masses), G=1.0, bodies=bodies, t0=0.0)
    return to_barycentric(cfg) if barycentric else cfg


class TestPairCenterOfMass:
    def test_equal_mass_midpoint(self):
        cfg = make_config((1, 1, 1), [(9, 9), (1, 0), (-1, 0)])
        com = pair_center_of_mass(cfg, exclude=1)
        assert com.position.x == 0.0 and com.position.y == 0.0

    def test_weighted_mean(self):
        cfg = make_config((1, 3, 1), [(9, 9), (0, 0), (4, 0)])
        com = pair_center_of_mass(cfg, exclude=1)
        assert com.position.x == pytest.approx(1.0, abs=0)
        assert com.position.y == 0.0

    def test_barycentric_identity(self):
        # with the barycenter at the origin, the pair COM is exactly
        # -(m1/(m2+m3)) times the excluded body's position
        rng = np.random.default_rng(7)
        for _ in range(50):
            cfg = random_barycentric_config(rng)
            for subject in (1, 2, 3):
                m_s = cfg.masses[subject - 1]
                rest = cfg.total_mass - m_s
                com = pair_center_of_mass(cfg, exclude=subject)
                expect = cfg.bodies[subject - 1].position * (-m_s / rest)
                scale = max(com.position.norm(), 1e-30)
                assert (com.position - expect).norm() <= 1e-12 * max(scale, 1.0)


class TestReduce:
    def test_equilateral_relative_radius(self):
        cfg = to_barycentric(lagrange_config())
        for subject in (1, 2, 3):
            problem = reduce(cfg, subject)
            subj_r = cfg.bodies[subject - 1].position.norm()
            assert problem.rel_initial.r == pytest.approx(1.5 * subj_r, rel=1e-12)

    def test_two_body_limit(self):
        cfg = make_config(
            (1.0, 1.0, 1e-30),
            [(1, 0), (-1, 0), (50, 0)],
            [(0, 0.5), (0, -0.5), (0, 0.1)],
            barycentric=True,
        )
        problem = reduce(cfg, 1)
        assert problem.combined_mass == pytest.approx(1.0, rel=1e-15)
        d12 = (cfg.bodies[1].position - cfg.bodies[0].position).norm()
        assert problem.rel_initial.r == pytest.approx(d12, rel=1e-12)

    def test_mass_ratio(self):
        cfg = make_config((5, 3, 2), [(1, 0), (-1, 1), (0, -2)], barycentric=True)
        assert reduce(cfg, 1).mass_ratio == pytest.approx(0.5, abs=0)

    def test_relative_radius_scaling_property(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            cfg = random_barycentric_config(rng)
            for subject in (1, 2, 3):
                problem = reduce(cfg, subject)
                expect = (
                    problem.total_mass / problem.combined_mass
                ) * cfg.bodies[subject - 1].position.norm()
                assert problem.rel_initial.r == pytest.approx(expect, rel=1e-12)

    def test_relative_angle_opposite_subject(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            cfg = random_barycentric_config(rng)
            for subject in (1, 2, 3):
                problem = reduce(cfg, subject)
                pos = cfg.bodies[subject - 1].position
                theta_subj = math.atan2(pos.y, pos.x)
                gap = problem.rel_initial.theta - theta_subj
                assert abs(math.cos(gap) + 1.0) < 1e-12  # differs by pi mod 2*pi

    def test_degenerate_rotation(self):
        # head-on radial motion: relative vector does not rotate
        cfg = make_config(
            (1, 1, 0),
            [(1, 0), (-1, 0), (0, 100)],
            [(-0.1, 0), (0.1, 0), (0, 0)],
        )
        with pytest.raises(DegenerateRotation):
            reduce(cfg, 1)

    def test_frame_shift_flagged(self):
        shifted = make_config((1, 1, 1), [(10, 0), (11, 0), (10, 1)])
        assert reduce(shifted, 1).frame_shifted
        centered = to_barycentric(shifted)
        assert not reduce(centered, 1).frame_shifted


class TestCollinearityDefect:
    def test_barycentric_configs_are_antiparallel(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            cfg = random_barycentric_config(rng)
            for subject in (1, 2, 3):
                assert collinearity_defect(cfg, subject) < 1e-12

    def test_parallel_gives_two(self):
        # pair COM on the same side as body 1
        cfg = make_config((1, 1, 1), [(1, 0), (2, 0.1), (2, -0.1)])
        assert collinearity_defect(cfg, 1) == pytest.approx(2.0, abs=1e-6)

    def test_orthogonal_gives_one(self):
        cfg = make_config((1, 1, 1), [(1, 0), (0, 1.5), (0, 0.5)])
        assert collinearity_defect(cfg, 1) == pytest.approx(1.0, abs=1e-12)
