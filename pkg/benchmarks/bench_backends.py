"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_backends.py

Times the four hot kernels on representative workloads and prints a
table with the speedup of the compiled extension. If the extension is
not built, only the Python numbers are shown.
"""

import math
import time

import numpy as np

from triconic._kernels import _core_py

try:
    from triconic._kernels import _core
except ImportError:
    _core = None


def binary_state():
    y = np.zeros(12)
    y[0], y[2] = 1.0, -1.0  # positions +-1 on x
    y[7], y[9] = 0.5, -0.5  # tangential velocities
    y[4], y[5] = 30.0, 0.0
    y[10], y[11] = 0.0, 0.26
    return y


MASSES = np.array([1.0, 1.0, 1e-4])
PERIOD = 4.0 * math.pi


def bench_adaptive(mod):
    ts = np.linspace(0.0, 10.0 * PERIOD, 2001)
    mod.integrate_adaptive(MASSES, 1.0, binary_state(), 0.0, ts, 1e-10, 1e-12, 0, 1e-8, math.inf)


def bench_rk4(mod):
    ts = np.linspace(0.0, 2.0 * PERIOD, 101)
    mod.integrate_rk4(MASSES, 1.0, binary_state(), 0.0, ts, 1e-3, 0, 1e-8)


def bench_antideriv(mod):
    for psi in np.linspace(-40.0, 40.0, 20000):
        mod.timelaw_antideriv(0.18, 0.25, psi)


def bench_quad(mod):
    # tolerance proportional to the integral scale, as the library uses it
    for hi in np.linspace(0.5, 4.0 * math.pi, 40):
        rough, _ = mod.timelaw_quad(0.18, 0.25, 0.0, hi, math.inf)
        mod.timelaw_quad(0.18, 0.25, 0.0, hi, 1e-12 * abs(rough))


BENCHES = [
    ("adaptive RK5(4), 10 orbits", bench_adaptive, 5),
    ("fixed RK4, ~25k steps", bench_rk4, 5),
    ("time-law antiderivative x20k", bench_antideriv, 5),
    ("adaptive quadrature x40 spans", bench_quad, 5),
]


def measure(fn, mod, repeats):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(mod)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    rows = []
    for name, fn, repeats in BENCHES:
        t_py = measure(fn, _core_py, repeats)
        if _core is not None:
            t_c = measure(fn, _core, repeats)
            rows.append((name, t_py, t_c, t_py / t_c))
        else:
            rows.append((name, t_py, None, None))

    header = f"{'kernel':<34} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, t_py, t_c, speedup in rows:
        if t_c is None:
            print(f"{name:<34} {t_py * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
        else:
            print(f"{name:<34} {t_py * 1e3:>8.2f}ms {t_c * 1e3:>8.2f}ms {speedup:>7.1f}x")
    if _core is None:
        print("\ncompiled extension not available; showing fallback only")


if __name__ == "__main__":
    main()
