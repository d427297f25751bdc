import math

import numpy as np
import pytest

from triconic import (
    GridMismatch,
    IntegratorSettings,
    assemble_all,
    compare,
    integrate,
    regime_check,
)
from triconic.assembly import TrajectorySeries
from triconic.metrics import collinearity_series
from helpers import binary_period, binary_with_far_body, random_barycentric_config


def synthetic_series(body, t, theta, r, source="oracle", method=None):
    t = np.asarray(t, dtype=float)
    theta = np.asarray(theta, dtype=float)
    r = np.asarray(r, dtype=float)
    return TrajectorySeries(
        subject_index=body,
        t=t,
        theta=theta,
        r=r,
        x=r * np.cos(theta),
        y=r * np.sin(theta),
        source=source,
        method=method,
    )


def oracle_triplet(n=20):
    t = np.linspace(0.0, 5.0, n)
    out = []
    for body, (r0, th0) in enumerate([(1.0, 0.0), (1.5, 2.0), (2.0, 4.0)], start=1):
        theta = th0 + 0.3 * t
        out.append(synthetic_series(body, t, theta, np.full(n, r0)))
    return tuple(out)


class TestCompare:
    def test_identity_is_zero(self):
        oracle = oracle_triplet()
        cfg = binary_with_far_body(m3=0.5)
        report = compare(oracle, oracle, cfg)
        for stats in report.per_body:
            assert stats.max_rel_radial_error == 0.0
            assert stats.mean_rel_radial_error == 0.0
            assert stats.max_position_error == 0.0

    def test_scaled_radius_gives_exact_error(self):
        oracle = oracle_triplet()
        scaled = tuple(
            synthetic_series(s.subject_index, s.t, s.theta, 1.01 * s.r, source="approximate")
            for s in oracle
        )
        cfg = binary_with_far_body(m3=0.5)
        report = compare(scaled, oracle, cfg)
        for stats in report.per_body:
            assert stats.max_rel_radial_error == pytest.approx(0.01, rel=1e-12)
            assert stats.mean_rel_radial_error == pytest.approx(0.01, rel=1e-12)

    def test_position_error_symmetric(self):
        a = oracle_triplet()
        b = tuple(
            synthetic_series(s.subject_index, s.t, s.theta + 0.01, s.r * 1.02)
            for s in a
        )
        cfg = binary_with_far_body(m3=0.5)
        fwd = compare(a, b, cfg)
        rev = compare(b, a, cfg)
        for s1, s2 in zip(fwd.per_body, rev.per_body):
            assert s1.max_position_error == pytest.approx(s2.max_position_error, rel=1e-15)
            # radial denominators differ, so relative errors need not match
            assert s1.max_rel_radial_error != s2.max_rel_radial_error

    def test_grid_mismatch(self):
        a = oracle_triplet()
        shifted = tuple(
            synthetic_series(s.subject_index, s.t + 1e-9, s.theta, s.r) for s in a
        )
        cfg = binary_with_far_body(m3=0.5)
        with pytest.raises(GridMismatch):
            compare(a, shifted, cfg)

    def test_hierarchical_error_monotone_in_third_mass(self):
        from helpers import hierarchical_config

        errors = []
        for ratio in (1e-6, 1e-2):
            cfg = hierarchical_config(ratio)
            p = binary_period(cfg)
            ts = np.linspace(0.0, p, 201)
            approx = assemble_all(cfg, ts)
            assert approx.ok
            oracle = integrate(cfg, IntegratorSettings(), times=ts)
            report = compare(approx.series, oracle.series, cfg, oracle.conservation)
            errors.append(report.per_body[0].max_rel_radial_error)
        assert errors[0] < errors[1]


class TestRegimeCheck:
    def test_slow_circular_unflagged(self):
        t = np.linspace(0.0, 50.0, 101)
        series = synthetic_series(1, t, 0.125 * t, np.full(101, 4.0))
        flags, max_radius = regime_check(series)
        assert flags == ()
        assert max_radius == 4.0

    def test_single_fast_jump_flagged(self):
        t = np.array([0.0, 1.0, 2.0, 3.0])
        theta = np.array([0.0, 0.1, 2.1, 2.2])  # one 2 rad/s jump
        series = synthetic_series(1, t, theta, np.ones(4))
        flags, _ = regime_check(series)
        assert len(flags) > 0
        assert all(f.kind == "angular_rate" for f in flags)
        assert any(abs(f.value) >= 1.0 for f in flags)

    def test_flags_empty_iff_below_limit(self):
        rng = np.random.default_rng(61)
        for _ in range(20):
            n = 30
            t = np.linspace(0.0, 10.0, n)
            theta = np.cumsum(rng.uniform(-0.3, 0.5, n))
            series = synthetic_series(1, t, theta, np.ones(n))
            flags, _ = regime_check(series)
            rate = np.empty(n)
            rate[1:-1] = (theta[2:] - theta[:-2]) / (t[2:] - t[:-2])
            rate[0] = (theta[1] - theta[0]) / (t[1] - t[0])
            rate[-1] = (theta[-1] - theta[-2]) / (t[-1] - t[-2])
            assert (len(flags) == 0) == bool(np.max(np.abs(rate)) < 1.0)


class TestCollinearityOnOracle:
    def test_defect_small_along_trajectories(self):
        rng = np.random.default_rng(67)
        for _ in range(5):
            cfg = random_barycentric_config(rng)
            ts = np.linspace(0.0, 3.0, 100)
            res = integrate(cfg, IntegratorSettings(tolerance=1e-10), times=ts)
            t, defect = collinearity_series(res.series, cfg)
            assert len(t) == 100
            assert np.max(defect) < 1e-10
