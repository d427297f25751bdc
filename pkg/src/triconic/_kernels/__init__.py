"""Numeric kernel backend selection.

The hot inner loops (n-body right-hand sides, Runge-Kutta stepping,
time-law antiderivative and quadrature) exist twice: as a compiled
Cython extension (``_core``) and as a pure-Python mirror (``_core_py``).
The compiled core is preferred when importable; setting the environment
variable TRICONIC_PURE_PYTHON to a non-empty value other than "0"
forces the fallback. ``benchmarks/bench_backends.py`` compares the two.
"""

import os

if os.environ.get("TRICONIC_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _core_py as backend
else:
    try:
        from . import _core as backend  # type: ignore[no-redef]
    except ImportError:
        from . import _core_py as backend

BACKEND_NAME = backend.BACKEND_NAME

FORCE_PAIRWISE = backend.FORCE_PAIRWISE
FORCE_PAIR_COM = backend.FORCE_PAIR_COM
STATUS_OK = backend.STATUS_OK
STATUS_COLLISION = backend.STATUS_COLLISION
STATUS_STEP_UNDERFLOW = backend.STATUS_STEP_UNDERFLOW
QUAD_OK = backend.QUAD_OK
QUAD_DIVERGENT = backend.QUAD_DIVERGENT
QUAD_DEPTH_EXCEEDED = backend.QUAD_DEPTH_EXCEEDED

rhs = backend.rhs
min_pair_distance = backend.min_pair_distance
integrate_adaptive = backend.integrate_adaptive
integrate_rk4 = backend.integrate_rk4
timelaw_antideriv = backend.timelaw_antideriv
timelaw_integrand = backend.timelaw_integrand
timelaw_quad = backend.timelaw_quad
