"""Two-state domain types and analytic machinery.

Conventions used throughout the package (hbar = 1, energies in rad/time):

    H(t) = 1/2 [[-Delta, Omega], [Omega, Delta]]

with mixing angle theta in [0, pi/2] defined by tan(2 theta) = Omega/Delta,
rotation matrix R(theta) = [[cos, sin], [-sin, cos]] connecting the bases as
c = R a, quasienergy splitting E = sqrt(Omega^2 + Delta^2), and adiabatic
energies (Delta +- E)/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from .cerf import complex_erf, complex_erf_info

if TYPE_CHECKING:
    from .families import PulseModel

__all__ = [
    "AmplitudePair",
    "Basis",
    "BasisMismatchError",
    "DegenerateInputError",
    "MixingAngle",
    "adiabatic_hamiltonian",
    "adiabatic_rotate",
    "complex_erf",
    "complex_erf_info",
    "eigen_splitting",
    "hamiltonian",
    "mixing_angle",
    "nonadiabatic_coupling",
]


class Basis(str, Enum):
    DIABATIC = "diabatic"
    ADIABATIC = "adiabatic"


class DegenerateInputError(ValueError):
    """Both field components vanish, so the requested quantity is undefined."""


class BasisMismatchError(ValueError):
    """Amplitudes are not in the basis the operation expects."""


@dataclass(frozen=True)
class MixingAngle:
    """Rotation angle between the bases, constrained to [0, pi/2]."""

    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError(f"mixing angle {self.theta} outside [0, pi/2]")


@dataclass(frozen=True)
class AmplitudePair:
    """Two complex probability amplitudes tagged with their basis.

    In the diabatic basis (c1, c2) are the bare-state amplitudes; in the
    adiabatic basis they are (a_minus, a_plus).
    """

    c1: complex
    c2: complex
    basis: Basis
    time: float

    @property
    def norm(self) -> float:
        return math.sqrt(abs(self.c1) ** 2 + abs(self.c2) ** 2)

    def normalized(self) -> "AmplitudePair":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize a zero amplitude pair")
        return AmplitudePair(self.c1 / n, self.c2 / n, self.basis, self.time)


def mixing_angle(omega: float, delta: float) -> MixingAngle:
    """Mixing angle theta in [0, pi/2] with tan(2 theta) = omega/delta.

    atan2 picks the branch that is continuous as delta crosses zero for
    fixed omega > 0, running from pi/2 (delta -> -inf) to 0 (delta -> +inf)
    with theta(delta=0) = pi/4.
    """
    if omega == 0.0 and delta == 0.0:
        raise DegenerateInputError("mixing angle undefined for omega = delta = 0")
    if omega < 0.0:
        raise ValueError("omega must be nonnegative (it is a Rabi frequency)")
    return MixingAngle(0.5 * math.atan2(omega, delta))


def nonadiabatic_coupling(model: "PulseModel", t: float) -> float:
    """d(theta)/dt along the real axis.

    Equals (dOmega/dt * Delta - dDelta/dt * Omega) / (2 (Omega^2 + Delta^2));
    the factor two in the denominator comes from theta being *half* the
    rotation angle of atan2, and is what a finite difference of
    mixing_angle reproduces.
    """
    om = complex(model.omega(t)).real
    de = complex(model.delta(t)).real
    e2 = om * om + de * de
    if e2 == 0.0:
        raise DegenerateInputError(f"splitting vanishes at t = {t}")
    omd = complex(model.omega_dot(t)).real
    ded = complex(model.delta_dot(t)).real
    return (omd * de - ded * om) / (2.0 * e2)


def eigen_splitting(model: "PulseModel", t: complex) -> complex:
    """Quasienergy splitting sqrt(Omega^2 + Delta^2) at real or complex t.

    Real t gives the positive root; complex t gives the principal branch of
    the analytic continuation E^2 = Omega^2 + Delta^2. Branch *continuity*
    along a specific complex path is the DDP engine's job (it tracks the
    sign of the root while marching); this function alone cannot know the
    path.
    """
    if isinstance(t, (int, float)) or (isinstance(t, complex) and t.imag == 0.0):
        tr = float(complex(t).real)
        om = complex(model.omega(tr)).real
        de = complex(model.delta(tr)).real
        return complex(math.hypot(om, de), 0.0)
    return cmath.sqrt(model.esq(t))


def adiabatic_rotate(amps: AmplitudePair, theta: MixingAngle | float, to_basis: Basis) -> AmplitudePair:
    """Rotate amplitudes between the bases through the mixing angle.

    c = R(theta) a, so mapping to the adiabatic basis applies R^-1. The
    rotation is orthogonal: the norm is preserved to floating error and a
    roundtrip is the identity.
    """
    th = theta.theta if isinstance(theta, MixingAngle) else float(theta)
    if amps.basis == to_basis:
        raise BasisMismatchError(f"amplitudes already in {to_basis.value} basis")
    c, s = math.cos(th), math.sin(th)
    if to_basis == Basis.ADIABATIC:
        out1 = c * amps.c1 - s * amps.c2
        out2 = s * amps.c1 + c * amps.c2
    else:
        out1 = c * amps.c1 + s * amps.c2
        out2 = -s * amps.c1 + c * amps.c2
    return AmplitudePair(out1, out2, to_basis, amps.time)


def hamiltonian(model: "PulseModel", t: float) -> np.ndarray:
    """Diabatic RWA Hamiltonian 1/2 [[-Delta, Omega], [Omega, Delta]]."""
    om = complex(model.omega(t)).real
    de = complex(model.delta(t)).real
    return np.array([[-0.5 * de, 0.5 * om], [0.5 * om, 0.5 * de]], dtype=complex)


def adiabatic_hamiltonian(model: "PulseModel", t: float, convention: str = "standard") -> np.ndarray:
    """Hamiltonian governing the adiabatic-basis amplitudes.

    convention="standard" returns

        [[(Delta - E)/2, -i theta_dot], [i theta_dot, (Delta + E)/2]]

    i.e. diagonal (E_minus, E_plus) with the nonadiabatic coupling
    -i theta_dot off the diagonal. convention="doubled" returns the variant
    with diagonal (+E, -E) and real coupling -2 theta_dot, which for a
    constant-splitting model is the familiar [[Omega0, pi/2 f'], ...] form.
    The two differ by a uniform factor of two (and a phase twist of the
    coupling); any comparison between analytic and numeric results must
    stick to one convention throughout.
    """
    om = complex(model.omega(t)).real
    de = complex(model.delta(t)).real
    e = math.hypot(om, de)
    if e == 0.0:
        raise DegenerateInputError(f"splitting vanishes at t = {t}")
    td = nonadiabatic_coupling(model, t)
    if convention == "standard":
        return np.array(
            [[0.5 * (de - e), -1j * td], [1j * td, 0.5 * (de + e)]], dtype=complex
        )
    if convention == "doubled":
        return np.array([[e, -2.0 * td], [-2.0 * td, -e]], dtype=complex)
    raise ValueError(f"unknown convention {convention!r}")
