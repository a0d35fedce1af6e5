"""Pulse-model constructors: invariants, continuations, and validation."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from superddp import (
    ShapeFunction,
    ValidationError,
    eigen_splitting,
    erf_shape,
    gaussian_shape,
    make_constant_splitting,
    make_erf,
    make_erf_deviated,
    make_gaussian,
    make_landau_zener,
    make_parametrized,
    mixing_angle,
    nonadiabatic_coupling,
    tanh_shape,
)


def _real_grid(model, n=1001):
    a, b = model.window
    return np.linspace(a, b, n)


def test_constant_splitting_is_exact():
    for model in (
        make_erf(3.0, 1.0),
        make_constant_splitting(tanh_shape(), 3.0),
        make_constant_splitting(erf_shape(0.5), 3.0),
    ):
        dev = max(
            abs(eigen_splitting(model, float(t)).real - 3.0)
            for t in _real_grid(model)
        )
        assert dev <= 1e-12 * 3.0, f"{model.label}: {dev:.3e}"


def test_constant_splitting_has_constant_esq_off_axis():
    model = make_erf(3.0, 1.0)
    for z in (0.5 + 0.5j, -1.0 + 2.0j, 2.0 - 1.0j):
        assert abs(model.esq(z) - 9.0) <= 1e-10 * 9.0


def test_parametrized_splitting_identity():
    om0, d0 = 2.0, 1.0
    shape = gaussian_shape()
    model = make_parametrized(shape, om0, d0)
    for t in np.linspace(-3.0, 3.0, 1000):
        lam2 = complex(shape.value(t)).real ** 2
        expect = d0 * d0 + (om0 * om0 - d0 * d0) * lam2
        assert abs(model.esq(float(t)) - expect) <= 1e-12 * (om0 * om0)
    # the identity is the analytic continuation: it must hold off-axis too
    for z in (0.7 + 0.9j, -1.2 + 0.4j):
        lam2 = shape.value(z) ** 2
        expect = d0 * d0 + (om0 * om0 - d0 * d0) * lam2
        assert abs(model.esq(z) - expect) <= 1e-10 * (om0 * om0)


def test_parametrized_detuning_is_odd_crossing():
    model = make_parametrized(gaussian_shape(), 2.0, 1.0)
    assert model.level_crossing
    for t in (0.3, 1.1, 2.5):
        assert abs(model.delta(t) + model.delta(-t)) <= 1e-12
    assert model.delta(4.0).real > 0.0
    assert abs(model.delta(0.0)) <= 1e-12


def test_level_crossing_angle_boundaries():
    for model in (make_erf(3.0, 1.0), make_erf_deviated(3.0, 1.0, 1.0)):
        a, b = model.window
        th_a = mixing_angle(model.omega(a).real, model.delta(a).real).theta
        th_b = mixing_angle(model.omega(b).real, model.delta(b).real).theta
        assert abs(th_a - math.pi / 2) <= 1e-6
        assert abs(th_b) <= 1e-6


def test_gaussian_components():
    model = make_gaussian(2.0, 0.7, 1.3)
    for t in (-0.9, 0.0, 0.4, 2.2):
        assert model.omega(t) == pytest.approx(
            2.0 * math.exp(-((t / 1.3) ** 2)), rel=1e-14
        )
        # the detuning sign is part of the prefactor convention
        assert model.delta(t) == pytest.approx(-0.7, rel=1e-14)
    assert not model.level_crossing


def test_landau_zener_components():
    model = make_landau_zener(1.5, 2.0)
    for t in (-3.0, 0.0, 5.0):
        assert model.omega(t) == pytest.approx(1.5, rel=1e-14)
        assert model.delta(t) == pytest.approx(2.0 * t, rel=1e-14)
    assert model.level_crossing


def test_deviated_converges_to_optimized():
    base = make_erf(3.0, 1.0)
    ts = np.linspace(-4.0, 4.0, 201)

    def dev(mu):
        model = make_erf_deviated(3.0, 1.0, mu)
        return max(abs(model.esq(float(t)) - base.esq(float(t))) for t in ts)

    devs = [dev(0.5**n) for n in range(1, 6)]
    for a, b in zip(devs, devs[1:]):
        assert b <= 0.6 * a + 1e-12
    assert dev(0.0) <= 1e-12


def test_theta_dot_matches_real_axis_coupling():
    for model in (
        make_gaussian(2.0, 1.0, 1.0),
        make_erf_deviated(3.0, 1.0, 1.0),
        make_landau_zener(1.0, 1.0),
    ):
        for t in (-1.3, -0.4, 0.2, 0.8):
            td = model.theta_dot(t)
            assert abs(td.imag) <= 1e-12 * max(1.0, abs(td))
            assert td.real == pytest.approx(
                nonadiabatic_coupling(model, t), rel=1e-12, abs=1e-15
            )


def test_derivative_callbacks_match_finite_differences():
    h = 1e-6
    for model in (
        make_gaussian(2.0, 1.0, 1.0),
        make_erf_deviated(3.0, 1.0, 1.0),
        make_parametrized(gaussian_shape(), 2.0, 1.0),
    ):
        for t in (-1.1, 0.35, 1.7):
            fd_om = (model.omega(t + h) - model.omega(t - h)) / (2 * h)
            fd_esq = (model.esq(t + h) - model.esq(t - h)) / (2 * h)
            assert abs(model.omega_dot(t) - fd_om) <= 1e-7 * model.scale
            assert abs(model.esq_dot(t) - fd_esq) <= 1e-6 * model.scale**2


def test_saturating_continuation_does_not_raise():
    # deep in the upper half-plane the erf-built trig factors overflow a
    # double; the continuation must saturate instead of raising
    model = make_erf_deviated(3.0, 1.0, 1.0)
    for z in (0.0 + 12.0j, 2.0 + 30.0j, -1.0 + 60.0j):
        val = model.esq(z)
        assert isinstance(val, complex)


def test_shape_functions():
    g = gaussian_shape(1.5)
    assert complex(g.value(0.0)).real == 1.0
    assert g.kind == "pulse" and g.even_analytic
    e = erf_shape(2.0)
    t = tanh_shape()
    for shape, x in ((e, 16.5), (t, 16.5)):
        assert shape.kind == "monotone"
        assert complex(shape.value(x)).real == pytest.approx(1.0, abs=1e-6)
        assert complex(shape.value(-x)).real == pytest.approx(-1.0, abs=1e-6)
    for shape in (g, e, t):
        h = 1e-6
        fd = (shape.value(0.8 + h) - shape.value(0.8 - h)) / (2 * h)
        assert abs(shape.derivative(0.8) - fd) <= 1e-7


def test_validation_rejections():
    with pytest.raises(ValidationError):
        make_gaussian(-1.0, 1.0, 1.0)
    with pytest.raises(ValidationError):
        make_gaussian(1.0, 1.0, 0.0)
    with pytest.raises(ValidationError):
        make_landau_zener(0.0, 1.0)
    with pytest.raises(ValidationError):
        make_landau_zener(1.0, -2.0)
    with pytest.raises(ValidationError):
        make_erf_deviated(1.0, 1.0, -1.5)
    with pytest.raises(ValidationError):
        make_constant_splitting(gaussian_shape(), 1.0)
    with pytest.raises(ValidationError):
        make_constant_splitting(tanh_shape(), -1.0)
    with pytest.raises(ValidationError):
        make_parametrized(tanh_shape(), 1.0, 1.0)
    with pytest.raises(ValidationError):
        make_parametrized(gaussian_shape(), 0.0, 1.0)

    low_peak = ShapeFunction(
        value=lambda t: 0.9 * cmath.exp(-(t * t)),
        derivative=lambda t: -1.8 * t * cmath.exp(-(t * t)),
        kind="pulse",
    )
    with pytest.raises(ValidationError):
        make_parametrized(low_peak, 2.0, 1.0)

    decreasing = ShapeFunction(
        value=lambda t: -cmath.tanh(t),
        derivative=lambda t: -1.0 / cmath.cosh(t) ** 2,
        kind="monotone",
    )
    with pytest.raises(ValidationError):
        make_constant_splitting(decreasing, 1.0)


def test_parametrized_complex_detuning_needs_even_analytic():
    sech = ShapeFunction(
        value=lambda t: 1.0 / cmath.cosh(t),
        derivative=lambda t: -cmath.sinh(t) / cmath.cosh(t) ** 2,
        kind="pulse",
        even_analytic=False,
    )
    model = make_parametrized(sech, 2.0, 1.0)
    assert not model.analytic
    with pytest.raises(ValidationError):
        model.delta(0.5 + 0.5j)
    # esq stays evaluable off-axis regardless
    assert cmath.isfinite(model.esq(0.5 + 0.5j))


def test_windows_are_proportional_to_t_char():
    assert make_gaussian(1.0, 1.0, 2.0).window == (-12.0, 12.0)
    assert make_erf(1.0, 0.5).window == (-3.0, 3.0)
    a, b = make_landau_zener(1.0, 4.0).window
    assert (a, b) == (-25.0, 25.0)
