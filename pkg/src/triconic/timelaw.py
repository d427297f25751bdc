"""Time of flight along a conic and its inversion.

The elapsed time from theta0 to theta is the integral of
(k1*cos(psi) + k2)**-2 over psi = theta - phi, divided by the signed
specific angular momentum h. For elliptic-like conics (k2 > k1) a
branch-continuous closed-form antiderivative is used; otherwise the
integral is evaluated by adaptive quadrature. The quadrature path also
serves as the independent oracle for the closed form in the tests.

Inversion (theta at a given time) runs a safeguarded secant/bisection
on a bracket seeded by the mean-motion estimate; the law is strictly
monotone so the bracket only needs expansion, never repair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels as kernels
from .conic import ELLIPTIC, ConicParams, eval_radius
from .errors import DegenerateRotation, QuadratureFailure, RadiusDivergence, Unreachable

CLOSED_FORM = "closed-form"
QUADRATURE = "quadrature"

#: Relative accuracy target for the quadrature path.
QUAD_RTOL = 1e-12


@dataclass(frozen=True)
class TimeLaw:
    """Immutable time-of-flight map for one conic, anchored at (theta0, t0)."""

    params: ConicParams
    h: float
    theta0: float
    t0: float
    sweep_sign: int
    method: str


def make_time_law(params: ConicParams, theta0: float, t0: float) -> TimeLaw:
    if params.h == 0.0:
        raise DegenerateRotation("time law requires nonzero angular momentum")
    method = CLOSED_FORM if params.orbit_class == ELLIPTIC else QUADRATURE
    return TimeLaw(
        params=params,
        h=params.h,
        theta0=theta0,
        t0=t0,
        sweep_sign=1 if params.h > 0.0 else -1,
        method=method,
    )


def _check_quad(status: int) -> None:
    if status == kernels.QUAD_DIVERGENT:
        raise RadiusDivergence("time-law integrand diverged inside the span")
    if status == kernels.QUAD_DEPTH_EXCEEDED:
        raise QuadratureFailure("adaptive quadrature exhausted refinement depth")


def quadrature_between(k1: float, k2: float, a: float, b: float) -> float:
    """Integral of (k2 + k1*cos(psi))**-2 over [a, b], to ~QUAD_RTOL relative.

    Two passes: a cheap low-accuracy estimate fixes the absolute
    tolerance for the refined pass, making the stopping rule effectively
    relative regardless of span length.
    """
    if a == b:
        return 0.0
    rough, status = kernels.timelaw_quad(k1, k2, a, b, math.inf)
    _check_quad(status)
    value, status = kernels.timelaw_quad(k1, k2, a, b, QUAD_RTOL * abs(rough))
    _check_quad(status)
    return value


def time_at(law: TimeLaw, theta: float) -> float:
    """Time at which the orbit angle reaches ``theta``."""
    p = law.params
    psi0 = law.theta0 - p.phi
    psi = theta - p.phi
    if law.method == CLOSED_FORM:
        span = kernels.timelaw_antideriv(p.k1, p.k2, psi) - kernels.timelaw_antideriv(
            p.k1, p.k2, psi0
        )
    else:
        span = quadrature_between(p.k1, p.k2, psi0, psi)
    return law.t0 + span / law.h


def period(law: TimeLaw) -> float:
    """Time per full revolution (elliptic-like conics only)."""
    p = law.params
    if p.orbit_class != ELLIPTIC:
        raise ValueError(f"period undefined for a {p.orbit_class} conic")
    beta2 = (p.k2 - p.k1) * (p.k2 + p.k1)
    return 2.0 * math.pi * p.k2 / (beta2 * math.sqrt(beta2) * abs(law.h))


def _angular_domain(law: TimeLaw) -> tuple[float, float]:
    """Open angular interval around theta0 where the conic stays bound."""
    p = law.params
    if p.orbit_class == ELLIPTIC:
        return -math.inf, math.inf
    psi0 = law.theta0 - p.phi
    center = 2.0 * math.pi * math.floor((psi0 + math.pi) / (2.0 * math.pi))
    ratio = min(1.0, p.k2 / p.k1)
    half_width = math.acos(-ratio)
    return p.phi + center - half_width, p.phi + center + half_width


def _solve_bracketed(f, lo, hi, flo, fhi, xtol, maxiter=200):
    """Illinois-weighted regula falsi on an increasing bracketed function."""
    side = 0
    for _ in range(maxiter):
        if hi - lo <= xtol:
            break
        denom = fhi - flo
        xm = (lo * fhi - hi * flo) / denom if denom != 0.0 else 0.5 * (lo + hi)
        if not (lo < xm < hi):
            xm = 0.5 * (lo + hi)
        fm = f(xm)
        if fm == 0.0:
            return xm
        if fm < 0.0:
            lo, flo = xm, fm
            if side == -1:
                fhi *= 0.5
            side = -1
        else:
            hi, fhi = xm, fm
            if side == 1:
                flo *= 0.5
            side = 1
    return 0.5 * (lo + hi)


def theta_at(law: TimeLaw, t: float) -> float:
    """Angle reached at time ``t`` (inverse of time_at).

    The result satisfies time_at(law, result) = t to ~1e-10 (absolute,
    or relative for large t) and round-trips theta to ~1e-10 rad.
    """
    if t == law.t0:
        return law.theta0
    s = float(law.sweep_sign)

    def g(theta: float) -> float:
        # increasing in theta regardless of sweep orientation
        return s * (time_at(law, theta) - t)

    if law.params.orbit_class == ELLIPTIC:
        revs = (t - law.t0) / period(law)
        est = law.theta0 + s * 2.0 * math.pi * revs
        lo, hi = est - math.pi, est + math.pi
        flo, fhi = g(lo), g(hi)
        expansions = 0
        while flo > 0.0:
            hi, fhi = lo, flo
            lo -= math.pi
            flo = g(lo)
            expansions += 1
            if expansions > 64:
                raise Unreachable(f"failed to bracket t={t!r}")
        while fhi < 0.0:
            lo, flo = hi, fhi
            hi += math.pi
            fhi = g(hi)
            expansions += 1
            if expansions > 64:
                raise Unreachable(f"failed to bracket t={t!r}")
    else:
        dom_lo, dom_hi = _angular_domain(law)
        # probe geometrically toward the edge the root must lie against;
        # g is increasing, so the first sign change closes the bracket
        g0 = g(law.theta0)
        edge = dom_hi if g0 < 0.0 else dom_lo
        prev, fprev = law.theta0, g0
        frac = 0.5
        for _ in range(70):
            probe = edge - (edge - law.theta0) * frac
            fp = g(probe)
            if (fp >= 0.0) != (g0 >= 0.0):
                break
            prev, fprev = probe, fp
            frac *= 0.5
        else:
            raise Unreachable(f"time {t!r} lies beyond the reachable span")
        lo, hi = (prev, probe) if prev < probe else (probe, prev)
        flo, fhi = (fprev, fp) if prev < probe else (fp, fprev)

    xtol = 1e-12 * max(1.0, abs(lo), abs(hi))
    return _solve_bracketed(g, lo, hi, flo, fhi, xtol)


def angular_rate_at_time(law: TimeLaw, t: float) -> float:
    """theta_dot at time t via conservation of h."""
    x = eval_radius(law.params, theta_at(law, t))
    return law.h / (x * x)
