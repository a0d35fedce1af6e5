"""Pulse model constructors and validators.

A PulseModel bundles the analytic maps Omega(t), Delta(t) (plus derivatives
and the analytic continuation of E^2 = Omega^2 + Delta^2) with the metadata
the rest of the package needs: characteristic scales, a default integration
window, and capability flags. Models are immutable; constructors validate
their inputs once and the result can be shared freely across threads.

Built-in families:

    gaussian          constant (negative) detuning, Gaussian Rabi peak
    landau_zener      constant Rabi frequency, linearly swept detuning
    erf               level crossing with exactly constant splitting
                      (erf-shaped sweep), optionally deviated by mu
    parametrized      Omega = Omega0 * shape, Delta = Delta0 sign(t)
                      sqrt(1 - shape^2): constant splitting iff
                      Omega0 = Delta0
    constant_splitting  Delta = Omega0 sin(pi f/2), Omega = Omega0 cos(pi f/2)
                      for a monotone f with f(+-inf) = +-1
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cerf import complex_erf

__all__ = [
    "PulseModel",
    "ShapeFunction",
    "ValidationError",
    "erf_shape",
    "gaussian_shape",
    "make_constant_splitting",
    "make_erf",
    "make_erf_deviated",
    "make_gaussian",
    "make_landau_zener",
    "make_parametrized",
    "tanh_shape",
]

_SQRT_PI = math.sqrt(math.pi)


def _cexp(z: complex) -> complex:
    """exp for complex z that saturates to inf instead of raising.

    Newton iterations probe regions where exp(-2t^2) overflows double
    precision; the float limit (directed infinity) lets the caller's
    finiteness check discard the seed instead of crashing.
    """
    z = complex(z)
    if z.real > 700.0:
        return cmath.rect(math.inf, z.imag)
    return cmath.exp(z)


def _csin(z: complex) -> complex:
    """sin saturating to a non-finite value rather than raising."""
    z = complex(z)
    if abs(z.imag) > 700.0 or abs(z.real) > 1e15:
        return complex(math.inf, math.inf)
    return cmath.sin(z)


def _ccos(z: complex) -> complex:
    """cos saturating to a non-finite value rather than raising."""
    z = complex(z)
    if abs(z.imag) > 700.0 or abs(z.real) > 1e15:
        return complex(math.inf, math.inf)
    return cmath.cos(z)


class ValidationError(ValueError):
    """A constructor input violates the family's contract."""


@dataclass(frozen=True, eq=False)
class ShapeFunction:
    """Dimensionless shape with an analytic derivative.

    kind "pulse": 0 < value < 1 on the real line away from t = 0, peak
    value 1 at t = 0 (a lower peak would make the derived detuning jump).
    kind "monotone": increases from -1 at -inf to +1 at +inf.
    even_analytic marks pulse shapes that are even and entire, which is
    what the complex continuation of sign(t)*sqrt(1 - value^2) requires.
    """

    value: Callable[[complex], complex]
    derivative: Callable[[complex], complex]
    kind: str
    t_char: float = 1.0
    even_analytic: bool = False
    tag: str = ""


@dataclass(frozen=True, eq=False)
class PulseModel:
    """Analytic description of a two-state pulse.

    omega/delta/omega_dot/delta_dot accept real or complex time and return
    complex values that are real on the real axis. esq is the analytic
    continuation of Omega^2 + Delta^2; it is provided separately because it
    can be analytic even where delta itself is not (the parametrized
    family), and the transition-point search runs on it. analytic marks
    models whose delta is itself evaluable off the real axis.
    """

    label: str
    params: dict
    omega: Callable[[complex], complex]
    delta: Callable[[complex], complex]
    omega_dot: Callable[[complex], complex]
    delta_dot: Callable[[complex], complex]
    esq: Callable[[complex], complex]
    esq_dot: Callable[[complex], complex]
    scale: float
    t_char: float
    window: tuple[float, float]
    analytic: bool = True
    level_crossing: bool = False
    # (family_id, p0, p1, p2) consumed by the compiled integrator; None
    # means the model only runs on the pure backend
    kernel_spec: tuple | None = None

    def theta_dot(self, t: complex) -> complex:
        """Nonadiabatic coupling continued off the real axis."""
        om, de = self.omega(t), self.delta(t)
        return (self.omega_dot(t) * de - self.delta_dot(t) * om) / (2.0 * self.esq(t))


def make_gaussian(coupling_amplitude: float, splitting: float, T: float) -> PulseModel:
    """Gaussian Rabi peak over a constant detuning.

    Omega(t) = A exp(-(t/T)^2), Delta(t) = -S. The detuning sign makes the
    residue prefactors at the transition points tau_k^+- come out as
    +-(-1)^k rather than the globally flipped set; probabilities are
    unaffected either way.
    """
    a, s, T = float(coupling_amplitude), float(splitting), float(T)
    if a <= 0 or s <= 0 or T <= 0:
        raise ValidationError("coupling_amplitude, splitting and T must be positive")

    def om(t):
        return a * _cexp(-((t / T) ** 2))

    def omd(t):
        return a * _cexp(-((t / T) ** 2)) * (-2.0 * t / T**2)

    def esq(t):
        return a * a * _cexp(-2.0 * (t / T) ** 2) + s * s

    def esqd(t):
        return a * a * _cexp(-2.0 * (t / T) ** 2) * (-4.0 * t / T**2)

    return PulseModel(
        label="gaussian",
        params={"coupling_amplitude": a, "splitting": s, "T": T},
        omega=om,
        delta=lambda t: complex(-s),
        omega_dot=omd,
        delta_dot=lambda t: 0j,
        esq=esq,
        esq_dot=esqd,
        scale=max(a, s),
        t_char=T,
        window=(-6.0 * T, 6.0 * T),
        analytic=True,
        level_crossing=False,
        kernel_spec=(0, a, s, T),
    )


def make_landau_zener(omega0: float, v: float) -> PulseModel:
    """Constant coupling Omega0 with a linear detuning sweep v*t.

    The default window +-50/sqrt(v) truncates an infinite sweep; the
    boundary mixing angle then sits ~Omega0/(100 sqrt(v)) away from its
    asymptote, which shows up as a (benign) window warning in the
    propagator but is far below the accuracy DDP itself offers.
    """
    om0, v = float(omega0), float(v)
    if om0 <= 0 or v <= 0:
        raise ValidationError("omega0 and v must be positive")
    half = 50.0 / math.sqrt(v)
    return PulseModel(
        label="landau_zener",
        params={"omega0": om0, "v": v},
        omega=lambda t: complex(om0),
        delta=lambda t: v * complex(t),
        omega_dot=lambda t: 0j,
        delta_dot=lambda t: complex(v),
        esq=lambda t: om0 * om0 + (v * complex(t)) ** 2,
        esq_dot=lambda t: 2.0 * v * v * complex(t),
        scale=om0,
        t_char=om0 / v,  # transition point sits at i*omega0/v
        window=(-half, half),
        analytic=True,
        level_crossing=True,
        kernel_spec=(1, om0, v, 0.0),
    )


def _validate_monotone(f: ShapeFunction) -> None:
    tc = f.t_char
    grid = np.linspace(-8.0 * tc, 8.0 * tc, 10_001)
    vals = np.array([complex(f.value(t)).real for t in grid])
    if np.any(np.diff(vals) < 0.0):
        raise ValidationError("shape function is not monotonically increasing")
    # 1e-6 admits slow-saturating sweeps (tanh sits 2e-7 short of 1 at the
    # probe edge); residual boundary mixing is the propagator's
    # WindowWarning to report, not a defect of the shape
    if abs(vals[0] + 1.0) > 1e-6 or abs(vals[-1] - 1.0) > 1e-6:
        raise ValidationError("shape function must run from -1 to +1")


def make_constant_splitting(f: ShapeFunction, omega0: float, T: float | None = None) -> PulseModel:
    """Level-crossing model with exactly constant splitting Omega0.

    Delta = Omega0 sin(pi f/2), Omega = Omega0 cos(pi f/2) for a monotone
    f: the trajectory stays on the circle Omega^2 + Delta^2 = Omega0^2, so
    E^2 never vanishes anywhere in the complex plane and the model has no
    transition points in this basis.
    """
    if f.kind != "monotone":
        raise ValidationError("constant-splitting family needs a monotone shape")
    om0 = float(omega0)
    if om0 <= 0:
        raise ValidationError("omega0 must be positive")
    _validate_monotone(f)
    tc = float(T) if T is not None else f.t_char
    half_pi = 0.5 * math.pi

    def om(t):
        return om0 * _ccos(half_pi * f.value(t))

    def de(t):
        return om0 * _csin(half_pi * f.value(t))

    def omd(t):
        return -om0 * _csin(half_pi * f.value(t)) * half_pi * f.derivative(t)

    def ded(t):
        return om0 * _ccos(half_pi * f.value(t)) * half_pi * f.derivative(t)

    # cos^2 + sin^2 == 1 for ANY f, so E^2 is identically om0^2; the naive
    # sum loses all precision off the real axis (cosh^2 blowup), inventing
    # zeros from rounding noise
    def esq(t):
        return complex(om0 * om0)

    def esqd(t):
        return 0j

    return PulseModel(
        label="constant_splitting",
        params={"omega0": om0, "T": tc},
        omega=om,
        delta=de,
        omega_dot=omd,
        delta_dot=ded,
        esq=esq,
        esq_dot=esqd,
        scale=om0,
        t_char=tc,
        window=(-6.0 * tc, 6.0 * tc),
        analytic=True,
        level_crossing=True,
        kernel_spec=(2, om0, tc, 0.0) if f.tag == "erf" else None,
    )


def make_erf_deviated(omega0: float, T: float, mu_dev: float = 0.0) -> PulseModel:
    """erf-swept level crossing, optionally deviated off constant splitting.

    Delta = (Omega0 + mu) sin[(pi/2) erf(t/T)],
    Omega = Omega0 cos[(pi/2) erf(t/T)].

    mu = 0 is the DDP-optimized pulse: splitting exactly Omega0, no
    transition points. Any mu != 0 re-creates transition points, with
    E^2 = Omega0^2 + (2 Omega0 mu + mu^2) sin^2[(pi/2) erf(t/T)].
    """
    om0, T, mu = float(omega0), float(T), float(mu_dev)
    if om0 <= 0 or T <= 0:
        raise ValidationError("omega0 and T must be positive")
    if om0 + mu <= 0:
        raise ValidationError("omega0 + mu_dev must be positive")
    op = om0 + mu
    half_pi = 0.5 * math.pi

    def g(t):
        return half_pi * complex_erf(t / T)

    def gd(t):
        return (_SQRT_PI / T) * _cexp(-((t / T) ** 2))

    def om(t):
        return om0 * _ccos(g(t))

    def de(t):
        return op * _csin(g(t))

    def omd(t):
        return -om0 * _csin(g(t)) * gd(t)

    def ded(t):
        return op * _ccos(g(t)) * gd(t)

    # E^2 = om0^2 + (op^2 - om0^2) sin^2(g). Writing it as
    # om0^2 cos^2 + op^2 sin^2 loses everything off the real axis, where
    # cos^2 and sin^2 both blow up like cosh^2(Im g) and cancel; for
    # mu = 0 the naive form would even produce spurious complex zeros
    # out of pure rounding noise.
    coeff = op * op - om0 * om0

    if coeff == 0.0:

        def esq(t):
            return complex(om0 * om0)

        def esqd(t):
            return 0j

    else:

        def esq(t):
            s = _csin(g(t))
            return om0 * om0 + coeff * s * s

        def esqd(t):
            return coeff * _csin(2.0 * g(t)) * gd(t)

    return PulseModel(
        label="erf",
        params={"omega0": om0, "T": T, "mu_dev": mu},
        omega=om,
        delta=de,
        omega_dot=omd,
        delta_dot=ded,
        esq=esq,
        esq_dot=esqd,
        scale=max(om0, abs(op)),
        t_char=T,
        window=(-6.0 * T, 6.0 * T),
        analytic=True,
        level_crossing=True,
        kernel_spec=(2, om0, T, mu),
    )


def make_erf(omega0: float, T: float) -> PulseModel:
    """The optimized erf model: make_erf_deviated with mu_dev = 0."""
    return make_erf_deviated(omega0, T, 0.0)


def _validate_pulse(shape: ShapeFunction) -> None:
    tc = shape.t_char
    peak = complex(shape.value(0.0)).real
    if abs(peak - 1.0) > 1e-12:
        raise ValidationError(
            "pulse shape must peak at exactly 1 at t = 0, otherwise the "
            "derived detuning jumps across t = 0"
        )
    grid = np.linspace(-8.0 * tc, 8.0 * tc, 10_001)
    for t in grid:
        if abs(t) < 1e-9 * tc:
            continue
        v = complex(shape.value(t)).real
        if not 0.0 < v < 1.0:
            raise ValidationError(f"pulse shape leaves (0, 1) at t = {t}")


def make_parametrized(shape: ShapeFunction, omega0: float, delta0: float) -> PulseModel:
    """Omega = Omega0 * shape(t), Delta = Delta0 sign(t) sqrt(1 - shape^2).

    E^2 = Delta0^2 + (Omega0^2 - Delta0^2) shape^2 is analytic regardless
    of the sign(t) factor, so transition-point search always works; the
    complex continuation of Delta itself (needed for residue prefactors)
    exists only for even, entire shapes and is evaluated by marching the
    square-root branch vertically from the real axis.
    """
    if shape.kind != "pulse":
        raise ValidationError("parametrized family needs a pulse shape")
    om0, d0 = float(omega0), float(delta0)
    if om0 <= 0 or d0 <= 0:
        raise ValidationError("omega0 and delta0 must be positive")
    _validate_pulse(shape)
    lam, lamd = shape.value, shape.derivative
    tc = shape.t_char

    def w_real(x: float) -> float:
        v = complex(lam(x)).real
        return math.copysign(math.sqrt(max(0.0, 1.0 - v * v)), x)

    def w(t: complex) -> complex:
        """sign(t) sqrt(1 - shape^2) continued off the real axis."""
        t = complex(t)
        if t.imag == 0.0:
            return complex(w_real(t.real))
        if not shape.even_analytic:
            raise ValidationError(
                "complex evaluation of the detuning needs an even analytic shape"
            )
        # march vertically from the real-axis anchor, flipping the branch
        # of sqrt(1 - shape^2) whenever the radicand crosses the cut
        x = t.real
        anchor = complex(1.0 - complex(lam(x)).real ** 2)
        sign = 1.0 if x >= 0.0 else -1.0
        steps = max(8, int(8 * abs(t.imag) / tc))
        prev = anchor
        for j in range(1, steps + 1):
            z = complex(x, t.imag * j / steps)
            cur = 1.0 - lam(z) ** 2
            if prev.imag * cur.imag < 0.0:
                frac = prev.imag / (prev.imag - cur.imag)
                if prev.real + frac * (cur.real - prev.real) < 0.0:
                    sign = -sign
            prev = cur
        return sign * cmath.sqrt(prev)

    def de(t):
        return d0 * w(t)

    def ded(t):
        t = complex(t)
        wt = w(t)
        if abs(wt) < 1e-12:
            # t -> 0 limit: with lam = 1 + lam''(0) t^2/2 the combination
            # -lam lam'/w tends to sqrt(-lam''(0))
            h = 1e-6 * tc
            curv = (lamd(h) - lamd(-h)).real / (2.0 * h)
            return complex(d0 * math.sqrt(max(0.0, -curv)))
        return -d0 * lam(t) * lamd(t) / wt

    def esq(t):
        lv = lam(t)
        return d0 * d0 + (om0 * om0 - d0 * d0) * lv * lv

    def esqd(t):
        return 2.0 * (om0 * om0 - d0 * d0) * lam(t) * lamd(t)

    return PulseModel(
        label="parametrized",
        params={"omega0": om0, "delta0": d0, "T": tc},
        omega=lambda t: om0 * lam(t),
        delta=de,
        omega_dot=lambda t: om0 * lamd(t),
        delta_dot=ded,
        esq=esq,
        esq_dot=esqd,
        scale=max(om0, d0),
        t_char=tc,
        window=(-6.0 * tc, 6.0 * tc),
        analytic=shape.even_analytic,
        level_crossing=True,
        kernel_spec=(3, om0, d0, tc) if shape.tag == "gaussian" else None,
    )


def gaussian_shape(T: float = 1.0) -> ShapeFunction:
    """exp(-(t/T)^2): the standard even entire pulse shape."""
    T = float(T)
    return ShapeFunction(
        value=lambda t: _cexp(-((t / T) ** 2)),
        derivative=lambda t: _cexp(-((t / T) ** 2)) * (-2.0 * t / T**2),
        kind="pulse",
        t_char=T,
        even_analytic=True,
        tag="gaussian",
    )


def erf_shape(T: float = 1.0) -> ShapeFunction:
    """erf(t/T): monotone from -1 to 1."""
    T = float(T)
    return ShapeFunction(
        value=lambda t: complex_erf(t / T),
        derivative=lambda t: (2.0 / (_SQRT_PI * T)) * _cexp(-((t / T) ** 2)),
        kind="monotone",
        t_char=T,
        tag="erf",
    )


def tanh_shape(T: float = 1.0) -> ShapeFunction:
    """tanh(t/T): an alternative monotone sweep used in tests."""
    T = float(T)
    return ShapeFunction(
        value=lambda t: cmath.tanh(t / T),
        derivative=lambda t: 1.0 / (T * cmath.cosh(t / T) ** 2),
        kind="monotone",
        t_char=T,
        tag="tanh",
    )
