# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels.

Behavioral mirror of ``_core_py``; keep the two in lockstep. The
functions here are the hot inner loops: the n-body right-hand side,
Runge-Kutta stepping, the time-law antiderivative, and the adaptive
quadrature of the time-law integrand.
"""

from libc.math cimport M_PI, atan, cos, fabs, floor, hypot, sin, sqrt, tan

import numpy as np

BACKEND_NAME = "compiled"

cdef int _PAIRWISE = 0
cdef int _PAIR_COM = 1

FORCE_PAIRWISE = 0
FORCE_PAIR_COM = 1

STATUS_OK = 0
STATUS_COLLISION = 1
STATUS_STEP_UNDERFLOW = 2

QUAD_OK = 0
QUAD_DIVERGENT = 1
QUAD_DEPTH_EXCEEDED = 2

cdef double _EPS = 2.220446049250313e-16
cdef double _INF = float("inf")
cdef double _NAN = float("nan")

cdef double _C2 = 0.2
cdef double _C3 = 0.3
cdef double _C4 = 0.8
cdef double _C5 = 8.0 / 9.0
cdef double _A21 = 0.2
cdef double _A31 = 3.0 / 40.0
cdef double _A32 = 9.0 / 40.0
cdef double _A41 = 44.0 / 45.0
cdef double _A42 = -56.0 / 15.0
cdef double _A43 = 32.0 / 9.0
cdef double _A51 = 19372.0 / 6561.0
cdef double _A52 = -25360.0 / 2187.0
cdef double _A53 = 64448.0 / 6561.0
cdef double _A54 = -212.0 / 729.0
cdef double _A61 = 9017.0 / 3168.0
cdef double _A62 = -355.0 / 33.0
cdef double _A63 = 46732.0 / 5247.0
cdef double _A64 = 49.0 / 176.0
cdef double _A65 = -5103.0 / 18656.0
cdef double _A71 = 35.0 / 384.0
cdef double _A73 = 500.0 / 1113.0
cdef double _A74 = 125.0 / 192.0
cdef double _A75 = -2187.0 / 6784.0
cdef double _A76 = 11.0 / 84.0
cdef double _E1 = 71.0 / 57600.0
cdef double _E3 = -71.0 / 16695.0
cdef double _E4 = 71.0 / 1920.0
cdef double _E5 = -17253.0 / 339200.0
cdef double _E6 = 22.0 / 525.0
cdef double _E7 = -1.0 / 40.0


cdef void _rhs(double* m, double G, double* y, int mode, double* out) noexcept nogil:
    cdef int i, j
    cdef double dx, dy, d2, inv_d3, gx, gy, total, rest, px, py
    for i in range(6):
        out[i] = y[6 + i]
    for i in range(6, 12):
        out[i] = 0.0
    if mode == _PAIRWISE:
        for i in range(3):
            for j in range(i + 1, 3):
                dx = y[2 * j] - y[2 * i]
                dy = y[2 * j + 1] - y[2 * i + 1]
                d2 = dx * dx + dy * dy
                inv_d3 = 1.0 / (d2 * sqrt(d2))
                gx = G * dx * inv_d3
                gy = G * dy * inv_d3
                out[6 + 2 * i] += m[j] * gx
                out[6 + 2 * i + 1] += m[j] * gy
                out[6 + 2 * j] -= m[i] * gx
                out[6 + 2 * j + 1] -= m[i] * gy
    else:
        total = m[0] + m[1] + m[2]
        for i in range(3):
            rest = total - m[i]
            px = 0.0
            py = 0.0
            for j in range(3):
                if j != i:
                    px += m[j] * y[2 * j]
                    py += m[j] * y[2 * j + 1]
            px /= rest
            py /= rest
            dx = px - y[2 * i]
            dy = py - y[2 * i + 1]
            d2 = dx * dx + dy * dy
            inv_d3 = 1.0 / (d2 * sqrt(d2))
            out[6 + 2 * i] = G * rest * dx * inv_d3
            out[6 + 2 * i + 1] = G * rest * dy * inv_d3


def rhs(masses, double G, y, int mode, out):
    """Write the state derivative into ``out`` (length 12)."""
    cdef double[::1] mv = np.ascontiguousarray(masses, dtype=np.float64)
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef double[::1] ov = out
    _rhs(&mv[0], G, &yv[0], mode, &ov[0])


cdef double _min_pair_distance(double* y) noexcept nogil:
    cdef double best = _INF
    cdef double d
    cdef int i, j
    for i in range(3):
        for j in range(i + 1, 3):
            d = hypot(y[2 * j] - y[2 * i], y[2 * j + 1] - y[2 * i + 1])
            if d < best:
                best = d
    return best


def min_pair_distance(y):
    """Smallest of the three pairwise body distances."""
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    return _min_pair_distance(&yv[0])


cdef double _error_norm(double* err, double* y_old, double* y_new,
                        double rtol, double atol) noexcept nogil:
    cdef double acc = 0.0
    cdef double sc, q, a0, a1
    cdef int i
    for i in range(12):
        a0 = fabs(y_old[i])
        a1 = fabs(y_new[i])
        sc = atol + rtol * (a0 if a0 > a1 else a1)
        q = err[i] / sc
        acc += q * q
    return sqrt(acc / 12.0)


cdef double _rms_scaled(double* v, double* sc) noexcept nogil:
    cdef double acc = 0.0
    cdef double q
    cdef int i
    for i in range(12):
        q = v[i] / sc[i]
        acc += q * q
    return sqrt(acc / 12.0)


cdef double _initial_step(double* m, double G, double* y, double* f0, double sgn,
                          double rtol, double atol, int mode, double limit) noexcept nogil:
    cdef double sc[12]
    cdef double y1[12]
    cdef double f1[12]
    cdef double diff[12]
    cdef double d0, d1, d2, dm, h0, h1
    cdef int i
    for i in range(12):
        sc[i] = atol + rtol * fabs(y[i])
    d0 = _rms_scaled(y, sc)
    d1 = _rms_scaled(f0, sc)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    if h0 > limit:
        h0 = limit
    for i in range(12):
        y1[i] = y[i] + (sgn * h0) * f0[i]
    _rhs(m, G, y1, mode, f1)
    for i in range(12):
        diff[i] = f1[i] - f0[i]
    d2 = _rms_scaled(diff, sc) / h0
    dm = d1 if d1 > d2 else d2
    if dm <= 1e-15:
        h1 = 1e-6 if 1e-6 > h0 * 1e-3 else h0 * 1e-3
    else:
        h1 = (0.01 / dm) ** 0.2
    h0 = 100.0 * h0
    if h1 < h0:
        h0 = h1
    if limit < h0:
        h0 = limit
    return h0


def integrate_adaptive(masses, double G, y0, double t0, ts, double rtol,
                       double atol, int mode, double collision_eps, double max_step):
    """Adaptive RK5(4) propagation, sampling the state at each time in ``ts``.

    See the pure-Python mirror for the full contract.
    """
    cdef double[::1] mv = np.ascontiguousarray(masses, dtype=np.float64)
    cdef double[::1] tsv = np.ascontiguousarray(ts, dtype=np.float64)
    cdef Py_ssize_t n = tsv.shape[0]
    out_arr = np.empty((n, 12), dtype=np.float64)
    cdef double[:, ::1] Y = out_arr
    cdef double[::1] y0v = np.ascontiguousarray(y0, dtype=np.float64)

    cdef double y[12]
    cdef double ynew[12]
    cdef double ystage[12]
    cdef double k1[12]
    cdef double f2[12]
    cdef double f3[12]
    cdef double f4[12]
    cdef double f5[12]
    cdef double f6[12]
    cdef double f7[12]
    cdef double errv[12]
    cdef int i
    for i in range(12):
        y[i] = y0v[i]

    cdef double t = t0
    cdef long naccept = 0
    cdef long nreject = 0
    if n == 0:
        return out_arr, 0, STATUS_OK, t, naccept, nreject
    cdef double sgn = 1.0 if tsv[n - 1] >= t0 else -1.0

    _rhs(&mv[0], G, y, mode, k1)
    cdef double span = fabs(tsv[n - 1] - t0)
    cdef double limit = max_step
    if span > 0.0 and span < limit:
        limit = span
    cdef double h = _initial_step(&mv[0], G, y, k1, sgn, rtol, atol, mode, limit)

    cdef double beta = 0.04
    cdef double expo1 = 0.2 - beta * 0.75
    cdef double safe = 0.9
    cdef double facc1 = 1.0 / 0.2
    cdef double facc2 = 1.0 / 10.0
    cdef double facold = 1e-4
    cdef bint rejected = False

    cdef Py_ssize_t idx
    cdef double target, remaining, h_use, hs, err, fac11, fac, hnew, tscale
    cdef bint clamped, reached

    for idx in range(n):
        target = tsv[idx]
        while True:
            tscale = fabs(t)
            if fabs(target) > tscale:
                tscale = fabs(target)
            if tscale < 1.0:
                tscale = 1.0
            if (target - t) * sgn <= 4.0 * _EPS * tscale:
                break
            remaining = (target - t) * sgn
            if h > max_step:
                h = max_step
            h_use = h if h < remaining else remaining
            clamped = h_use < h
            reached = h_use == remaining
            tscale = fabs(t)
            if tscale < 1.0:
                tscale = 1.0
            if h_use < 16.0 * _EPS * tscale:
                return out_arr, idx, STATUS_STEP_UNDERFLOW, t, naccept, nreject
            hs = sgn * h_use

            for i in range(12):
                ystage[i] = y[i] + hs * (_A21 * k1[i])
            _rhs(&mv[0], G, ystage, mode, f2)
            for i in range(12):
                ystage[i] = y[i] + hs * (_A31 * k1[i] + _A32 * f2[i])
            _rhs(&mv[0], G, ystage, mode, f3)
            for i in range(12):
                ystage[i] = y[i] + hs * (_A41 * k1[i] + _A42 * f2[i] + _A43 * f3[i])
            _rhs(&mv[0], G, ystage, mode, f4)
            for i in range(12):
                ystage[i] = y[i] + hs * (_A51 * k1[i] + _A52 * f2[i] + _A53 * f3[i] + _A54 * f4[i])
            _rhs(&mv[0], G, ystage, mode, f5)
            for i in range(12):
                ystage[i] = y[i] + hs * (_A61 * k1[i] + _A62 * f2[i] + _A63 * f3[i] + _A64 * f4[i] + _A65 * f5[i])
            _rhs(&mv[0], G, ystage, mode, f6)
            for i in range(12):
                ynew[i] = y[i] + hs * (_A71 * k1[i] + _A73 * f3[i] + _A74 * f4[i] + _A75 * f5[i] + _A76 * f6[i])
            _rhs(&mv[0], G, ynew, mode, f7)
            for i in range(12):
                errv[i] = hs * (_E1 * k1[i] + _E3 * f3[i] + _E4 * f4[i] + _E5 * f5[i] + _E6 * f6[i] + _E7 * f7[i])
            err = _error_norm(errv, y, ynew, rtol, atol)

            if err <= 1.0:
                fac11 = err ** expo1
                fac = fac11 / facold ** beta
                fac = fac / safe
                if fac < facc2:
                    fac = facc2
                elif fac > facc1:
                    fac = facc1
                hnew = h_use / fac
                if rejected and hnew > h_use:
                    hnew = h_use
                facold = err if err > 1e-4 else 1e-4
                rejected = False
                naccept += 1
                t = target if reached else t + hs
                for i in range(12):
                    y[i] = ynew[i]
                    k1[i] = f7[i]
                if not clamped:
                    h = hnew
                if _min_pair_distance(y) < collision_eps:
                    return out_arr, idx, STATUS_COLLISION, t, naccept, nreject
            else:
                nreject += 1
                rejected = True
                fac11 = err ** expo1
                fac = fac11 / safe
                if fac > facc1:
                    fac = facc1
                h = h_use / fac
        t = target
        for i in range(12):
            Y[idx, i] = y[i]
    return out_arr, n, STATUS_OK, t, naccept, nreject


def integrate_rk4(masses, double G, y0, double t0, ts, double step, int mode,
                  double collision_eps):
    """Classic fixed-step RK4, clamping the final step onto each sample time."""
    cdef double[::1] mv = np.ascontiguousarray(masses, dtype=np.float64)
    cdef double[::1] tsv = np.ascontiguousarray(ts, dtype=np.float64)
    cdef Py_ssize_t n = tsv.shape[0]
    out_arr = np.empty((n, 12), dtype=np.float64)
    cdef double[:, ::1] Y = out_arr
    cdef double[::1] y0v = np.ascontiguousarray(y0, dtype=np.float64)

    cdef double y[12]
    cdef double ystage[12]
    cdef double k1[12]
    cdef double k2[12]
    cdef double k3[12]
    cdef double k4[12]
    cdef int i
    for i in range(12):
        y[i] = y0v[i]
    cdef double t = t0
    cdef long nsteps = 0
    if n == 0:
        return out_arr, 0, STATUS_OK, t, nsteps
    cdef double sgn = 1.0 if tsv[n - 1] >= t0 else -1.0
    cdef Py_ssize_t idx
    cdef double target, remaining, h_use, hs, tscale

    for idx in range(n):
        target = tsv[idx]
        while True:
            tscale = fabs(t)
            if fabs(target) > tscale:
                tscale = fabs(target)
            if tscale < 1.0:
                tscale = 1.0
            if (target - t) * sgn <= 4.0 * _EPS * tscale:
                break
            remaining = (target - t) * sgn
            h_use = step if step < remaining else remaining
            hs = sgn * h_use
            _rhs(&mv[0], G, y, mode, k1)
            for i in range(12):
                ystage[i] = y[i] + (0.5 * hs) * k1[i]
            _rhs(&mv[0], G, ystage, mode, k2)
            for i in range(12):
                ystage[i] = y[i] + (0.5 * hs) * k2[i]
            _rhs(&mv[0], G, ystage, mode, k3)
            for i in range(12):
                ystage[i] = y[i] + hs * k3[i]
            _rhs(&mv[0], G, ystage, mode, k4)
            for i in range(12):
                y[i] = y[i] + (hs / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            t = target if h_use == remaining else t + hs
            nsteps += 1
            if _min_pair_distance(y) < collision_eps:
                return out_arr, idx, STATUS_COLLISION, t, nsteps
        t = target
        for i in range(12):
            Y[idx, i] = y[i]
    return out_arr, n, STATUS_OK, t, nsteps


def timelaw_antideriv(double k1, double k2, double psi):
    """Branch-continuous antiderivative of (k2 + k1*cos(psi))**-2, k2 > k1 >= 0."""
    cdef double beta2 = (k2 - k1) * (k2 + k1)
    cdef double beta = sqrt(beta2)
    cdef double w = sqrt((k2 - k1) / (k2 + k1))
    cdef double n = floor((psi + M_PI) / (2.0 * M_PI))
    cdef double r = psi - 2.0 * M_PI * n
    cdef double base = atan(w * tan(0.5 * r)) + M_PI * n
    cdef double f1 = 2.0 * base / beta
    return (k2 * f1 - k1 * sin(psi) / (k2 + k1 * cos(psi))) / beta2


cdef inline double _integrand(double k1, double k2, double psi) noexcept nogil:
    cdef double den = k2 + k1 * cos(psi)
    if den <= 1e-14 * (fabs(k1) + fabs(k2)):
        return _INF
    return 1.0 / (den * den)


def timelaw_integrand(double k1, double k2, double psi):
    """(k2 + k1*cos(psi))**-2, or +inf where the denominator is not positive."""
    return _integrand(k1, k2, psi)


cdef struct _Segment:
    double x0
    double x2
    double f0
    double fm
    double f2
    double whole
    double tol
    int depth


def timelaw_quad(double k1, double k2, double a, double b, double abs_tol,
                 int max_depth=48):
    """Adaptive interval-halving Simpson integral of the time-law integrand."""
    if a == b:
        return 0.0, QUAD_OK
    cdef int npan = <int>(fabs(b - a) / (M_PI / 4.0)) + 1
    if fabs(b - a) <= (npan - 1) * (M_PI / 4.0):
        npan -= 1
    if npan < 1:
        npan = 1
    cdef double width = (b - a) / npan
    cdef double per_tol = abs_tol / npan
    cdef double total = 0.0
    cdef int status = QUAD_OK
    cdef _Segment stack[128]
    cdef int top
    cdef int p
    cdef double x0, x2, xm, f0, f2, fm
    cdef double sx0, sx2, sxm, sf0, sfm, sf2, swhole, stol
    cdef double xl, xr, fl, fr, left, right, delta, half_tol
    cdef int depth
    cdef bint converged

    for p in range(npan):
        x0 = a + p * width
        x2 = a + (p + 1) * width
        f0 = _integrand(k1, k2, x0)
        f2 = _integrand(k1, k2, x2)
        xm = 0.5 * (x0 + x2)
        fm = _integrand(k1, k2, xm)
        if f0 == _INF or f2 == _INF or fm == _INF:
            return _NAN, QUAD_DIVERGENT
        stack[0].x0 = x0
        stack[0].x2 = x2
        stack[0].f0 = f0
        stack[0].fm = fm
        stack[0].f2 = f2
        stack[0].whole = (x2 - x0) * (f0 + 4.0 * fm + f2) / 6.0
        stack[0].tol = per_tol
        stack[0].depth = 0
        top = 1
        while top > 0:
            top -= 1
            sx0 = stack[top].x0
            sx2 = stack[top].x2
            sf0 = stack[top].f0
            sfm = stack[top].fm
            sf2 = stack[top].f2
            swhole = stack[top].whole
            stol = stack[top].tol
            depth = stack[top].depth
            sxm = 0.5 * (sx0 + sx2)
            xl = 0.5 * (sx0 + sxm)
            xr = 0.5 * (sxm + sx2)
            fl = _integrand(k1, k2, xl)
            fr = _integrand(k1, k2, xr)
            if fl == _INF or fr == _INF:
                return _NAN, QUAD_DIVERGENT
            left = (sxm - sx0) * (sf0 + 4.0 * fl + sfm) / 6.0
            right = (sx2 - sxm) * (sfm + 4.0 * fr + sf2) / 6.0
            delta = left + right - swhole
            # second condition: machine-precision floor (see _core_py)
            converged = (fabs(delta) <= 15.0 * stol or
                         fabs(delta) <= 5e-15 * (fabs(left) + fabs(right)))
            if converged or depth >= max_depth:
                if not converged:
                    status = QUAD_DEPTH_EXCEEDED
                total += left + right + delta / 15.0
            else:
                half_tol = 0.5 * stol
                stack[top].x0 = sx0
                stack[top].x2 = sxm
                stack[top].f0 = sf0
                stack[top].fm = fl
                stack[top].f2 = sfm
                stack[top].whole = left
                stack[top].tol = half_tol
                stack[top].depth = depth + 1
                top += 1
                stack[top].x0 = sxm
                stack[top].x2 = sx2
                stack[top].f0 = sfm
                stack[top].fm = fr
                stack[top].f2 = sf2
                stack[top].whole = right
                stack[top].tol = half_tol
                stack[top].depth = depth + 1
                top += 1
    return total, status
