# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled amplitude integrator: Dormand-Prince 5(4) with FSAL reuse.

Hot path for parameter sweeps. Only families whose pulse shapes reduce to
libc calls are compiled in; everything else takes the pure backend. The
right-hand sides are the 4-real unpackings of i*da/dt = H a with the
traceless Hamiltonian in either basis, identical to the pure backend.

Family ids (must match the kernel_spec tuples set by the constructors):
    0  gaussian          p = (amplitude, splitting, T)
    1  landau_zener      p = (omega0, v, unused)
    2  erf / deviated    p = (omega0, T, mu_dev)
    3  parametrized with Gaussian shape  p = (omega0, delta0, T)
"""

from libc.math cimport atan2, cos, erf, exp, fabs, fmax, fmin, sin, sqrt

import numpy as np

DEF PI = 3.141592653589793
DEF SQRT_PI = 1.7724538509055159


cdef struct Fields:
    double om
    double de
    double td   # d(theta)/dt, needed only in the adiabatic basis


cdef inline void eval_fields(int family, double p0, double p1, double p2,
                             double t, bint need_td, Fields* f) noexcept nogil:
    cdef double om, de, esq, g, gd, lam, lamd, w, x
    if family == 0:
        # Gaussian coupling over constant negative detuning
        x = t / p2
        om = p0 * exp(-x * x)
        de = -p1
        f.om = om
        f.de = de
        if need_td:
            esq = om * om + p1 * p1
            f.td = t * p1 * om / (p2 * p2 * esq)
    elif family == 1:
        # constant coupling, linear detuning sweep
        om = p0
        de = p1 * t
        f.om = om
        f.de = de
        if need_td:
            esq = om * om + de * de
            f.td = -p1 * p0 / (2.0 * esq)
    elif family == 2:
        # erf-swept crossing, optionally deviated by mu = p2
        x = t / p1
        g = 0.5 * PI * erf(x)
        om = p0 * cos(g)
        de = (p0 + p2) * sin(g)
        f.om = om
        f.de = de
        if need_td:
            gd = (SQRT_PI / p1) * exp(-x * x)
            esq = om * om + de * de
            f.td = -p0 * (p0 + p2) * gd / (2.0 * esq)
    else:
        # omega0 * gaussian shape, delta0 * sign(t) * sqrt(1 - shape^2)
        x = t / p2
        lam = exp(-x * x)
        w = 1.0 - lam * lam
        w = sqrt(w) if w > 0.0 else 0.0
        if t < 0.0:
            w = -w
        f.om = p0 * lam
        f.de = p1 * w
        if need_td:
            esq = p1 * p1 + (p0 * p0 - p1 * p1) * lam * lam
            if fabs(w) < 1e-12:
                # t -> 0 limit of lam'/w is -sqrt(2)/T
                f.td = p0 * p1 * (-1.4142135623730951 / p2) / (2.0 * esq)
            else:
                lamd = -2.0 * t / (p2 * p2) * lam
                f.td = p0 * p1 * lamd / (2.0 * w * esq)


cdef inline void rhs(int family, double p0, double p1, double p2,
                     int basis, double t, double* y, double* dy) noexcept nogil:
    cdef Fields f
    cdef double om, de, e2, td
    eval_fields(family, p0, p1, p2, t, basis == 1, &f)
    if basis == 0:
        om = 0.5 * f.om
        de = 0.5 * f.de
        dy[0] = -de * y[1] + om * y[3]
        dy[1] = de * y[0] - om * y[2]
        dy[2] = om * y[1] + de * y[3]
        dy[3] = -om * y[0] - de * y[2]
    else:
        e2 = 0.5 * sqrt(f.om * f.om + f.de * f.de)
        td = f.td
        dy[0] = -e2 * y[1] - td * y[2]
        dy[1] = e2 * y[0] - td * y[3]
        dy[2] = td * y[0] + e2 * y[3]
        dy[3] = td * y[1] - e2 * y[2]


def evolve(int family, double p0, double p1, double p2,
           double t0, double t1, double[::1] y0, int basis,
           double rtol, double atol):
    """Integrate from t0 to t1 (either direction); returns ndarray(4)."""
    cdef double[4] y
    cdef double[4] ynew
    cdef double[4] ytmp
    cdef double[4] k1, k2, k3, k4, k5, k6, k7
    cdef double t = t0
    cdef double direction = 1.0 if t1 >= t0 else -1.0
    cdef double span = fabs(t1 - t0)
    cdef double h, err, sc, d0, d1_, hmin, fac
    cdef int i
    cdef long nsteps = 0, naccept = 0

    if span == 0.0:
        return np.asarray(y0).copy()

    for i in range(4):
        y[i] = y0[i]

    # initial step: conservative fraction of the span
    h = direction * fmin(span / 100.0, span)
    hmin = span * 1e-15

    rhs(family, p0, p1, p2, basis, t, y, k1)

    with nogil:
        while direction * (t1 - t) > 0.0:
            nsteps += 1
            if nsteps > 10_000_000:
                break
            if fabs(h) < hmin:
                nsteps = -1
                break
            if direction * (t + h - t1) > 0.0:
                h = t1 - t

            # Dormand-Prince 5(4) stages (k1 carried over, FSAL)
            for i in range(4):
                ytmp[i] = y[i] + h * 0.2 * k1[i]
            rhs(family, p0, p1, p2, basis, t + 0.2 * h, ytmp, k2)
            for i in range(4):
                ytmp[i] = y[i] + h * (0.075 * k1[i] + 0.225 * k2[i])
            rhs(family, p0, p1, p2, basis, t + 0.3 * h, ytmp, k3)
            for i in range(4):
                ytmp[i] = y[i] + h * ((44.0 / 45.0) * k1[i]
                                      - (56.0 / 15.0) * k2[i]
                                      + (32.0 / 9.0) * k3[i])
            rhs(family, p0, p1, p2, basis, t + 0.8 * h, ytmp, k4)
            for i in range(4):
                ytmp[i] = y[i] + h * ((19372.0 / 6561.0) * k1[i]
                                      - (25360.0 / 2187.0) * k2[i]
                                      + (64448.0 / 6561.0) * k3[i]
                                      - (212.0 / 729.0) * k4[i])
            rhs(family, p0, p1, p2, basis, t + (8.0 / 9.0) * h, ytmp, k5)
            for i in range(4):
                ytmp[i] = y[i] + h * ((9017.0 / 3168.0) * k1[i]
                                      - (355.0 / 33.0) * k2[i]
                                      + (46732.0 / 5247.0) * k3[i]
                                      + (49.0 / 176.0) * k4[i]
                                      - (5103.0 / 18656.0) * k5[i])
            rhs(family, p0, p1, p2, basis, t + h, ytmp, k6)
            for i in range(4):
                ynew[i] = y[i] + h * ((35.0 / 384.0) * k1[i]
                                      + (500.0 / 1113.0) * k3[i]
                                      + (125.0 / 192.0) * k4[i]
                                      - (2187.0 / 6784.0) * k5[i]
                                      + (11.0 / 84.0) * k6[i])
            rhs(family, p0, p1, p2, basis, t + h, ynew, k7)

            err = 0.0
            for i in range(4):
                d0 = h * ((71.0 / 57600.0) * k1[i]
                          - (71.0 / 16695.0) * k3[i]
                          + (71.0 / 1920.0) * k4[i]
                          - (17253.0 / 339200.0) * k5[i]
                          + (22.0 / 525.0) * k6[i]
                          - 0.025 * k7[i])
                sc = atol + rtol * fmax(fabs(y[i]), fabs(ynew[i]))
                d1_ = d0 / sc
                err += d1_ * d1_
            err = sqrt(err / 4.0)

            if err <= 1.0:
                naccept += 1
                t = t + h
                for i in range(4):
                    y[i] = ynew[i]
                    k1[i] = k7[i]
            if err == 0.0:
                fac = 5.0
            else:
                fac = 0.9 * err ** -0.2
                fac = fmin(5.0, fmax(0.2, fac))
            h = h * fac

    if nsteps < 0:
        raise RuntimeError("step-size underflow in compiled integrator")
    if direction * (t1 - t) > 0.0:
        raise RuntimeError("compiled integrator exceeded its step budget")

    out = np.empty(4, dtype=np.float64)
    for i in range(4):
        out[i] = y[i]
    return out
