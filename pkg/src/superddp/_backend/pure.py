"""Reference integrator on top of scipy's DOP853.

The two complex amplitudes are unpacked into four reals so the solver
works on a real system; the right-hand sides below are the real/imaginary
parts of i*da/dt = H a in the chosen basis (traceless form in both bases,
so amplitude-level comparisons across bases need no extra phase).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp


class StiffnessError(RuntimeError):
    """The adaptive integrator could not advance (step-size underflow)."""


# The caller's tolerance bounds the GLOBAL error (norm drift <= 10 x rtol
# over a window); the solver's tolerance controls local error per step.
# The gap is bridged by a fixed tightening factor calibrated on the widest
# built-in window (linear sweep, ~2.5e3 rad of accumulated phase).
_TIGHTEN = 20.0
_RTOL_FLOOR = 2.5e-14  # DOP853 rejects tolerances at rounding level


def _rhs_diabatic(model):
    omega, delta = model.omega, model.delta

    def rhs(t, y):
        om = omega(t).real * 0.5
        de = delta(t).real * 0.5
        return (
            -de * y[1] + om * y[3],
            de * y[0] - om * y[2],
            om * y[1] + de * y[3],
            -om * y[0] - de * y[2],
        )

    return rhs

def _rhs_adiabatic(model):
    omega, delta, omega_dot, delta_dot = (
        model.omega,
        model.delta,
        model.omega_dot,
        model.delta_dot,
    )

    def rhs(t, y):
        om = omega(t).real
        de = delta(t).real
        esq = om * om + de * de
        td = (omega_dot(t).real * de - delta_dot(t).real * om) / (2.0 * esq)
        e2 = 0.5 * math.sqrt(esq)
        return (
            -e2 * y[1] - td * y[2],
            e2 * y[0] - td * y[3],
            td * y[0] + e2 * y[3],
            td * y[1] - e2 * y[2],
        )

    return rhs


def evolve(model, t0, t1, y0, basis, rtol, atol):
    """Integrate the 4-real amplitude system from t0 to t1 (either order).

    y0 is [Re a1, Im a1, Re a2, Im a2]; returns the same layout at t1.
    """
    rhs = _rhs_adiabatic(model) if basis == "adiabatic" else _rhs_diabatic(model)
    sol = solve_ivp(
        rhs,
        (float(t0), float(t1)),
        np.asarray(y0, dtype=float),
        method="DOP853",
        rtol=max(rtol / _TIGHTEN, _RTOL_FLOOR),
        atol=max(atol / _TIGHTEN, 1e-300),
        dense_output=False,
    )
    if not sol.success:
        raise StiffnessError(f"integrator failed: {sol.message}")
    return sol.y[:, -1].copy()
