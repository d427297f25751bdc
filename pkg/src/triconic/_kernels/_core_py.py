"""Pure-Python numeric kernels.

Behavioral mirror of the compiled extension ``_core``; used as a
fallback when the extension is unavailable or when the environment
variable TRICONIC_PURE_PYTHON is set. Both backends take the same
arguments and must produce results that agree to rounding-level
differences (see tests/test_backends.py).

State layout for the integration kernels is a flat float64 vector
``y = [x1, y1, x2, y2, x3, y3, vx1, vy1, vx2, vy2, vx3, vy3]``.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"

# force models
FORCE_PAIRWISE = 0  # exact pairwise Newtonian gravity (the truth model)
FORCE_PAIR_COM = 1  # combined mass of the other pair placed at their COM

# integration status codes
STATUS_OK = 0
STATUS_COLLISION = 1
STATUS_STEP_UNDERFLOW = 2

# quadrature status codes
QUAD_OK = 0
QUAD_DIVERGENT = 1
QUAD_DEPTH_EXCEEDED = 2

_EPS = 2.220446049250313e-16

# Dormand-Prince 5(4) tableau. The fifth-order solution is propagated
# (local extrapolation); the embedded difference drives step control.
_C2, _C3, _C4, _C5 = 0.2, 0.3, 0.8, 8.0 / 9.0
_A21 = 0.2
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
)
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_A71, _A73, _A74, _A75, _A76 = (
    35.0 / 384.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
)
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)


def rhs(masses, G, y, mode, out):
    """Write the state derivative into ``out`` (length 12)."""
    for i in range(6):
        out[i] = y[6 + i]
    for i in range(6, 12):
        out[i] = 0.0
    if mode == FORCE_PAIRWISE:
        for i in range(3):
            for j in range(i + 1, 3):
                dx = y[2 * j] - y[2 * i]
                dy = y[2 * j + 1] - y[2 * i + 1]
                d2 = dx * dx + dy * dy
                inv_d3 = 1.0 / (d2 * math.sqrt(d2))
                gx = G * dx * inv_d3
                gy = G * dy * inv_d3
                out[6 + 2 * i] += masses[j] * gx
                out[6 + 2 * i + 1] += masses[j] * gy
                out[6 + 2 * j] -= masses[i] * gx
                out[6 + 2 * j + 1] -= masses[i] * gy
    else:
        total = masses[0] + masses[1] + masses[2]
        for i in range(3):
            rest = total - masses[i]
            px = 0.0
            py = 0.0
            for j in range(3):
                if j != i:
                    px += masses[j] * y[2 * j]
                    py += masses[j] * y[2 * j + 1]
            px /= rest
            py /= rest
            dx = px - y[2 * i]
            dy = py - y[2 * i + 1]
            d2 = dx * dx + dy * dy
            inv_d3 = 1.0 / (d2 * math.sqrt(d2))
            out[6 + 2 * i] = G * rest * dx * inv_d3
            out[6 + 2 * i + 1] = G * rest * dy * inv_d3


def min_pair_distance(y):
    """Smallest of the three pairwise body distances."""
    best = math.inf
    for i in range(3):
        for j in range(i + 1, 3):
            dx = y[2 * j] - y[2 * i]
            dy = y[2 * j + 1] - y[2 * i + 1]
            d = math.hypot(dx, dy)
            if d < best:
                best = d
    return best


def _error_norm(err, y_old, y_new, rtol, atol):
    acc = 0.0
    for i in range(12):
        sc = atol + rtol * max(abs(y_old[i]), abs(y_new[i]))
        q = err[i] / sc
        acc += q * q
    return math.sqrt(acc / 12.0)


def _initial_step(masses, G, y, f0, sgn, rtol, atol, mode, limit):
    sc = atol + rtol * np.abs(y)
    d0 = math.sqrt(float(np.mean((y / sc) ** 2)))
    d1 = math.sqrt(float(np.mean((f0 / sc) ** 2)))
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, limit)
    y1 = y + (sgn * h0) * f0
    f1 = np.empty(12)
    rhs(masses, G, y1, mode, f1)
    d2 = math.sqrt(float(np.mean(((f1 - f0) / sc) ** 2))) / h0
    dm = max(d1, d2)
    if dm <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / dm) ** 0.2
    return min(100.0 * h0, h1, limit)


def integrate_adaptive(masses, G, y0, t0, ts, rtol, atol, mode, collision_eps, max_step):
    """Adaptive RK5(4) propagation, sampling the state at each time in ``ts``.

    Sample times are hit exactly (the step is clamped at each target, so
    no dense-output interpolation is needed). Returns
    ``(Y, n_done, status, t_last, naccept, nreject)`` where ``Y`` holds one
    state row per completed sample and ``n_done`` counts completed rows.
    """
    masses = np.asarray(masses, dtype=float)
    ts = np.asarray(ts, dtype=float)
    n = len(ts)
    Y = np.empty((n, 12))
    y = np.array(y0, dtype=float)
    t = float(t0)
    naccept = 0
    nreject = 0
    if n == 0:
        return Y, 0, STATUS_OK, t, naccept, nreject
    sgn = 1.0 if ts[-1] >= t0 else -1.0

    k1 = np.empty(12)
    rhs(masses, G, y, mode, k1)
    span = abs(ts[-1] - t0)
    limit = min(max_step, span) if span > 0.0 else max_step
    h = _initial_step(masses, G, y, k1, sgn, rtol, atol, mode, limit)

    # PI step controller constants (standard fifth-order values)
    beta = 0.04
    expo1 = 0.2 - beta * 0.75
    safe = 0.9
    facc1 = 1.0 / 0.2
    facc2 = 1.0 / 10.0
    facold = 1e-4
    rejected = False

    f2 = np.empty(12)
    f3 = np.empty(12)
    f4 = np.empty(12)
    f5 = np.empty(12)
    f6 = np.empty(12)
    f7 = np.empty(12)

    for idx in range(n):
        target = ts[idx]
        while (target - t) * sgn > 4.0 * _EPS * max(abs(t), abs(target), 1.0):
            remaining = (target - t) * sgn
            h = min(h, max_step)
            h_use = min(h, remaining)
            clamped = h_use < h
            if h_use < 16.0 * _EPS * max(abs(t), 1.0):
                return Y, idx, STATUS_STEP_UNDERFLOW, t, naccept, nreject
            hs = sgn * h_use

            reached = h_use == remaining
            y2 = y + hs * (_A21 * k1)
            rhs(masses, G, y2, mode, f2)
            y3 = y + hs * (_A31 * k1 + _A32 * f2)
            rhs(masses, G, y3, mode, f3)
            y4 = y + hs * (_A41 * k1 + _A42 * f2 + _A43 * f3)
            rhs(masses, G, y4, mode, f4)
            y5 = y + hs * (_A51 * k1 + _A52 * f2 + _A53 * f3 + _A54 * f4)
            rhs(masses, G, y5, mode, f5)
            y6 = y + hs * (_A61 * k1 + _A62 * f2 + _A63 * f3 + _A64 * f4 + _A65 * f5)
            rhs(masses, G, y6, mode, f6)
            ynew = y + hs * (_A71 * k1 + _A73 * f3 + _A74 * f4 + _A75 * f5 + _A76 * f6)
            rhs(masses, G, ynew, mode, f7)
            errv = hs * (
                _E1 * k1 + _E3 * f3 + _E4 * f4 + _E5 * f5 + _E6 * f6 + _E7 * f7
            )
            err = _error_norm(errv, y, ynew, rtol, atol)

            if err <= 1.0:
                fac11 = err**expo1
                fac = fac11 / facold**beta
                fac = max(facc2, min(facc1, fac / safe))
                hnew = h_use / fac
                if rejected:
                    hnew = min(hnew, h_use)
                facold = max(err, 1e-4)
                rejected = False
                naccept += 1
                t = target if reached else t + hs
                y = ynew
                k1, f7 = f7, k1
                if not clamped:
                    h = hnew
                if min_pair_distance(y) < collision_eps:
                    return Y, idx, STATUS_COLLISION, t, naccept, nreject
            else:
                nreject += 1
                rejected = True
                fac11 = err**expo1
                h = h_use / min(facc1, fac11 / safe)
        t = target
        Y[idx] = y
    return Y, n, STATUS_OK, t, naccept, nreject


def integrate_rk4(masses, G, y0, t0, ts, step, mode, collision_eps):
    """Classic fixed-step RK4, clamping the final step onto each sample time."""
    masses = np.asarray(masses, dtype=float)
    ts = np.asarray(ts, dtype=float)
    n = len(ts)
    Y = np.empty((n, 12))
    y = np.array(y0, dtype=float)
    t = float(t0)
    nsteps = 0
    if n == 0:
        return Y, 0, STATUS_OK, t, nsteps
    sgn = 1.0 if ts[-1] >= t0 else -1.0
    k1 = np.empty(12)
    k2 = np.empty(12)
    k3 = np.empty(12)
    k4 = np.empty(12)
    for idx in range(n):
        target = ts[idx]
        while (target - t) * sgn > 4.0 * _EPS * max(abs(t), abs(target), 1.0):
            remaining = (target - t) * sgn
            h_use = min(step, remaining)
            hs = sgn * h_use
            rhs(masses, G, y, mode, k1)
            rhs(masses, G, y + (0.5 * hs) * k1, mode, k2)
            rhs(masses, G, y + (0.5 * hs) * k2, mode, k3)
            rhs(masses, G, y + hs * k3, mode, k4)
            y = y + (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t = target if h_use == remaining else t + hs
            nsteps += 1
            if min_pair_distance(y) < collision_eps:
                return Y, idx, STATUS_COLLISION, t, nsteps
        t = target
        Y[idx] = y
    return Y, n, STATUS_OK, t, nsteps


def timelaw_antideriv(k1, k2, psi):
    """Branch-continuous antiderivative of (k2 + k1*cos(psi))**-2.

    Valid for k2 > k1 >= 0. The naive arctangent antiderivative jumps at
    psi = (2n+1)*pi; reducing psi onto [-pi, pi) and adding n*pi to the
    arctangent restores a globally continuous, strictly increasing F.
    """
    beta2 = (k2 - k1) * (k2 + k1)
    beta = math.sqrt(beta2)
    w = math.sqrt((k2 - k1) / (k2 + k1))
    n = math.floor((psi + math.pi) / (2.0 * math.pi))
    r = psi - 2.0 * math.pi * n
    base = math.atan(w * math.tan(0.5 * r)) + math.pi * n
    f1 = 2.0 * base / beta
    return (k2 * f1 - k1 * math.sin(psi) / (k2 + k1 * math.cos(psi))) / beta2


def timelaw_integrand(k1, k2, psi):
    """(k2 + k1*cos(psi))**-2, or +inf where the denominator is not positive."""
    den = k2 + k1 * math.cos(psi)
    if den <= 1e-14 * (abs(k1) + abs(k2)):
        return math.inf
    return 1.0 / (den * den)


def timelaw_quad(k1, k2, a, b, abs_tol, max_depth=48):
    """Adaptive interval-halving Simpson integral of the time-law integrand.

    Returns ``(value, status)``; status flags a divergent integrand
    (denominator reached zero inside the span) or exhausted refinement
    depth. ``abs_tol`` is an absolute tolerance for the whole span.
    """
    if a == b:
        return 0.0, QUAD_OK
    # seed panels no wider than pi/4 so the periodic structure is resolved
    npan = max(1, int(math.ceil(abs(b - a) / (math.pi / 4.0))))
    width = (b - a) / npan
    per_tol = abs_tol / npan
    total = 0.0
    status = QUAD_OK
    for p in range(npan):
        x0 = a + p * width
        x2 = a + (p + 1) * width
        f0 = timelaw_integrand(k1, k2, x0)
        f2 = timelaw_integrand(k1, k2, x2)
        xm = 0.5 * (x0 + x2)
        fm = timelaw_integrand(k1, k2, xm)
        if math.isinf(f0) or math.isinf(f2) or math.isinf(fm):
            return math.nan, QUAD_DIVERGENT
        whole = (x2 - x0) * (f0 + 4.0 * fm + f2) / 6.0
        # explicit stack of (x0, x2, f0, fm, f2, whole, tol, depth)
        stack = [(x0, x2, f0, fm, f2, whole, per_tol, 0)]
        while stack:
            sx0, sx2, sf0, sfm, sf2, swhole, stol, depth = stack.pop()
            sxm = 0.5 * (sx0 + sx2)
            xl = 0.5 * (sx0 + sxm)
            xr = 0.5 * (sxm + sx2)
            fl = timelaw_integrand(k1, k2, xl)
            fr = timelaw_integrand(k1, k2, xr)
            if math.isinf(fl) or math.isinf(fr):
                return math.nan, QUAD_DIVERGENT
            left = (sxm - sx0) * (sf0 + 4.0 * fl + sfm) / 6.0
            right = (sx2 - sxm) * (sfm + 4.0 * fr + sf2) / 6.0
            delta = left + right - swhole
            # the second condition is a machine-precision floor: once the
            # Richardson correction is rounding noise, refinement is futile
            converged = abs(delta) <= 15.0 * stol or abs(delta) <= 5e-15 * (
                abs(left) + abs(right)
            )
            if converged or depth >= max_depth:
                if not converged:
                    status = QUAD_DEPTH_EXCEEDED
                total += left + right + delta / 15.0
            else:
                half_tol = 0.5 * stol
                stack.append((sx0, sxm, sf0, fl, sfm, left, half_tol, depth + 1))
                stack.append((sxm, sx2, sfm, fr, sf2, right, half_tol, depth + 1))
    return total, status
