"""Error function of a complex argument.

The pulse shapes used elsewhere in this package are built from erf, and the
DDP machinery has to evaluate them off the real axis, so we need erf(z) for
complex z with close to machine accuracy. The evaluation is a trapezoidal
(Poisson-summation) expansion of the Fourier integral for erf(x+iy),

    erf(x+iy) = erf(x) + e^{-x^2}/(2*pi*x) * [(1-cos 2xy) + i sin 2xy]
              + (2/pi) e^{-x^2} * sum_n e^{-n^2/4}/(n^2+4x^2) * (f_n + i g_n)
              + eps,

whose truncation error is uniformly below ~2e-16 relative; a single formula
covers the whole plane, which avoids a series/asymptotic crossover seam.
Exponentials are combined before calling exp so the partial terms cannot
overflow while the result is representable.
"""

from __future__ import annotations

import math

__all__ = ["complex_erf", "complex_erf_info"]

# growth is e^{y^2-x^2}; past ~700 the result itself overflows a double
_OVERFLOW_EXPONENT = 700.0
_SATURATED = 1.0e308


def _erf_sum_terms(x: float, y: float) -> tuple[float, float]:
    """Series part of the expansion, for x >= 0, y >= 0.

    Returns (re, im) of sum_n e^{-n^2/4 - x^2}/(n^2+4x^2) * (f_n + i g_n)
    with the factor e^{-x^2} already folded into each term.
    """
    n_top = int(2.0 * y) + 15
    c2 = math.cos(2.0 * x * y)
    s2 = math.sin(2.0 * x * y)
    x2 = x * x
    re = 0.0
    im = 0.0
    for n in range(1, n_top + 1):
        # e^{-n^2/4 - x^2} * cosh(n y) and sinh(n y), kept in exponent form
        a = math.exp(n * y - 0.25 * n * n - x2)
        b = math.exp(-n * y - 0.25 * n * n - x2)
        ch = 0.5 * (a + b)
        sh = 0.5 * (a - b)
        e_only = math.exp(-0.25 * n * n - x2)
        f_n = 2.0 * x * e_only - 2.0 * x * ch * c2 + n * sh * s2
        g_n = 2.0 * x * ch * s2 + n * sh * c2
        w = 1.0 / (n * n + 4.0 * x2)
        re += w * f_n
        im += w * g_n
    return re, im


def _erf_quadrant(x: float, y: float) -> complex:
    """erf(x+iy) for x >= 0, y >= 0, no overflow handling."""
    if y == 0.0:
        return complex(math.erf(x), 0.0)
    if x < 1e-150:
        # the expansion's 1/x prefactor is unusable this close to the
        # imaginary axis; Im is even in x (so the x = 0 limit is exact to
        # O(x^2)) and Re is linear with slope erf'(iy)
        n_top = int(2.0 * y) + 15
        s = y / math.pi
        for n in range(1, n_top + 1):
            sh = 0.5 * (math.exp(n * y - 0.25 * n * n) - math.exp(-n * y - 0.25 * n * n))
            s += (2.0 / math.pi) * sh / n
        re = x * (2.0 / math.sqrt(math.pi)) * math.exp(y * y - x * x)
        return complex(re, s)

    sre, sim = _erf_sum_terms(x, y)
    # (1 - cos 2xy) written as 2 sin^2(xy) to avoid cancellation at small xy
    sin_xy = math.sin(x * y)
    pre = math.exp(-x * x) / (2.0 * math.pi * x)
    re = math.erf(x) + pre * 2.0 * sin_xy * sin_xy + (2.0 / math.pi) * sre
    im = pre * math.sin(2.0 * x * y) + (2.0 / math.pi) * sim
    return complex(re, im)


def complex_erf_info(z: complex) -> tuple[complex, bool]:
    """erf(z) plus a flag marking saturated (overflowed) results.

    The function is entire; odd and conjugate symmetry reduce the argument
    to the first quadrant. Where |erf(z)| exceeds the double range the
    dominant asymptotic term is returned with its exponent capped and the
    flag set.
    """
    z = complex(z)
    if abs(z) <= 1e-4:
        # short Taylor polynomial: next term is ~|z|^6/42 relative, far
        # below rounding, and both symmetries hold exactly
        z2 = z * z
        val = (2.0 / math.sqrt(math.pi)) * z * (1.0 - z2 / 3.0 + z2 * z2 / 10.0)
        return val, False
    x, y = z.real, z.imag
    sx = 1.0 if x >= 0.0 else -1.0
    sy = 1.0 if y >= 0.0 else -1.0
    ax, ay = abs(x), abs(y)

    if ay * ay - ax * ax > _OVERFLOW_EXPONENT:
        # erf(x+iy) ~ -e^{y^2-x^2} * (direction) / (z sqrt(pi)); magnitude
        # is not representable, return a capped value along that direction
        w = complex(ax, ay)
        phase = -complex(math.cos(2 * ax * ay), -math.sin(2 * ax * ay)) / (w * math.sqrt(math.pi))
        mag = abs(phase)
        direction = phase / mag if mag > 0 else complex(1.0, 0.0)
        val = complex(sx * direction.real * _SATURATED, sy * direction.imag * _SATURATED)
        return val, True

    w = _erf_quadrant(ax, ay)
    # odd + conjugate symmetry: the real part carries sign(x), the
    # imaginary part carries sign(y)
    return complex(sx * w.real, sy * w.imag), False


def complex_erf(z: complex) -> complex:
    """erf(z) for complex z; relative error below 1e-13 for |z| <= 12."""
    return complex_erf_info(z)[0]
