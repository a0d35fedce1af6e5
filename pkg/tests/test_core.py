"""Domain types, the mixing angle, and the basis rotation."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superddp import (
    AmplitudePair,
    Basis,
    BasisMismatchError,
    DegenerateInputError,
    MixingAngle,
    adiabatic_hamiltonian,
    adiabatic_rotate,
    eigen_splitting,
    hamiltonian,
    make_erf,
    make_gaussian,
    mixing_angle,
    nonadiabatic_coupling,
)

fields = st.floats(-100.0, 100.0, allow_nan=False)


def test_mixing_angle_anchors():
    assert mixing_angle(0.0, 2.0).theta == 0.0
    assert mixing_angle(0.0, -2.0).theta == pytest.approx(math.pi / 2, abs=1e-15)
    assert mixing_angle(3.0, 0.0).theta == pytest.approx(math.pi / 4, abs=1e-15)
    with pytest.raises(DegenerateInputError):
        mixing_angle(0.0, 0.0)


def test_mixing_angle_continuous_at_crossing():
    up = mixing_angle(1.0, 1e-12).theta
    down = mixing_angle(1.0, -1e-12).theta
    assert abs(up - math.pi / 4) <= 1e-9
    assert abs(down - math.pi / 4) <= 1e-9


@given(st.floats(0.0, 100.0, allow_nan=False), fields)
def test_mixing_angle_range_and_defining_relation(omega, delta):
    if omega == 0.0 and delta == 0.0:
        return
    th = mixing_angle(omega, delta).theta
    assert 0.0 <= th <= math.pi / 2
    # sin/cos form of tan(2 theta) = omega/delta, pole-free
    scale = math.hypot(omega, delta)
    lhs = omega * math.cos(2 * th)
    rhs = delta * math.sin(2 * th)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_mixing_angle_rejects_negative_coupling():
    with pytest.raises(ValueError):
        mixing_angle(-1.0, 0.5)


def test_mixing_angle_validates_range():
    with pytest.raises(ValueError):
        MixingAngle(-0.1)
    with pytest.raises(ValueError):
        MixingAngle(math.pi / 2 + 0.1)


def test_rotation_roundtrip_and_norm():
    amps = AmplitudePair(0.6 + 0.1j, -0.3 + 0.7j, Basis.DIABATIC, 0.0)
    th = mixing_angle(1.0, 0.5)
    a = adiabatic_rotate(amps, th, to_basis=Basis.ADIABATIC)
    back = adiabatic_rotate(a, th, to_basis=Basis.DIABATIC)
    assert a.basis is Basis.ADIABATIC
    assert abs(a.norm - amps.norm) <= 1e-15
    assert abs(back.c1 - amps.c1) <= 1e-15
    assert abs(back.c2 - amps.c2) <= 1e-15


def test_rotation_matches_matrix():
    # c = R(theta) a with R = [[cos, sin], [-sin, cos]]
    th = 0.37
    a = AmplitudePair(0.2 + 0.5j, 0.8 - 0.1j, Basis.ADIABATIC, 1.0)
    c = adiabatic_rotate(a, MixingAngle(th), to_basis=Basis.DIABATIC)
    expect1 = math.cos(th) * a.c1 + math.sin(th) * a.c2
    expect2 = -math.sin(th) * a.c1 + math.cos(th) * a.c2
    assert abs(c.c1 - expect1) <= 1e-15
    assert abs(c.c2 - expect2) <= 1e-15


def test_rotation_same_basis_is_rejected():
    amps = AmplitudePair(1.0, 0.0, Basis.DIABATIC, 0.0)
    with pytest.raises(BasisMismatchError):
        adiabatic_rotate(amps, 0.3, to_basis=Basis.DIABATIC)


def test_amplitude_pair_normalized():
    amps = AmplitudePair(3.0, 4.0j, Basis.DIABATIC, 0.0)
    assert amps.normalized().norm == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        AmplitudePair(0.0, 0.0, Basis.DIABATIC, 0.0).normalized()


def test_hamiltonian_structure():
    model = make_gaussian(2.0, 1.0, 1.0)
    t = 0.4
    h = hamiltonian(model, t)
    om = model.omega(t).real
    de = model.delta(t).real
    assert np.allclose(h, 0.5 * np.array([[-de, om], [om, de]]), atol=1e-15)
    # traceless, eigenvalues +-E/2
    evals = np.linalg.eigvalsh(h)
    e = math.hypot(om, de)
    assert np.allclose(sorted(evals), [-e / 2, e / 2], atol=1e-14)


def test_adiabatic_hamiltonian_conventions():
    model = make_gaussian(2.0, 1.0, 1.0)
    t = 0.4
    td = nonadiabatic_coupling(model, t)
    e = eigen_splitting(model, t).real
    de = model.delta(t).real

    std = adiabatic_hamiltonian(model, t, convention="standard")
    assert std[0, 0] == pytest.approx(0.5 * (de - e), abs=1e-14)
    assert std[1, 1] == pytest.approx(0.5 * (de + e), abs=1e-14)
    assert std[0, 1] == pytest.approx(-1j * td, abs=1e-14)
    assert np.allclose(std, std.conj().T, atol=1e-15)

    dbl = adiabatic_hamiltonian(model, t, convention="doubled")
    assert dbl[0, 0] == pytest.approx(e, abs=1e-14)
    assert dbl[1, 1] == pytest.approx(-e, abs=1e-14)
    assert dbl[0, 1] == pytest.approx(-2.0 * td, abs=1e-14)

    with pytest.raises(ValueError):
        adiabatic_hamiltonian(model, t, convention="bogus")


def test_doubled_convention_for_constant_splitting():
    # for a constant-splitting pulse the doubled form has the bare
    # splitting on the diagonal at every instant
    model = make_erf(7.0, 1.0)
    for t in (-2.0, 0.0, 1.5):
        dbl = adiabatic_hamiltonian(model, t, convention="doubled")
        assert dbl[0, 0] == pytest.approx(7.0, rel=1e-12)


def test_eigen_splitting_real_and_complex():
    model = make_gaussian(2.0, 1.0, 1.0)
    t = 0.3
    om = model.omega(t).real
    de = model.delta(t).real
    assert eigen_splitting(model, t).real == pytest.approx(
        math.hypot(om, de), rel=1e-14
    )
    z = 0.5 + 0.8j
    e = eigen_splitting(model, z)
    assert e * e == pytest.approx(model.esq(z), rel=1e-12)


def test_nonadiabatic_coupling_zero_for_constant_angle():
    # gaussian coupling over constant splitting at the pulse peak: the
    # angle is stationary there by symmetry
    model = make_gaussian(2.0, 1.0, 1.0)
    assert abs(nonadiabatic_coupling(model, 0.0)) <= 1e-14
