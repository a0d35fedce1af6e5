"""Closed-form results for the constant-splitting/Gaussian-coupling model.

The model is H(t) = 1/2 [[-S, A e^{-(t/T)^2}], [A e^{-(t/T)^2}, S]] with
constant splitting S and Gaussian coupling peak A.  Everything here is a
function of the single shape parameter alpha = A/S and the overall action
scale S*T: transition points in dimensionless time tau = t/T, the
small-alpha series for the phase integral D, uniform approximations for
Re D and Im D valid over the whole alpha range, and the final probability
formulas built from them.

This model is also the adiabatic-frame image of the erf pulse with
constant quasienergy gap Omega_0: there the roles are played by
splitting = Omega_0 and coupling_amplitude = sqrt(pi)/T, so
alpha = sqrt(pi)/(T*Omega_0).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .cerf import complex_erf_info
from .families import PulseModel, make_gaussian

__all__ = [
    "DomainError",
    "GaussianParams",
    "superadiabatic_image",
    "to_pulse_model",
    "transition_points_closed",
    "transition_points_small_alpha",
    "ddp_series_small_alpha",
    "im_d_uniform",
    "im_d_small_alpha_limit",
    "re_d_uniform",
    "probability_two_point",
    "probability_all_points",
]

_SQRT_PI = math.sqrt(math.pi)

# Fitted constants, kept at their printed precision; m makes im_d_uniform
# exact at alpha = 1, nu and the product mu*(2-mu) calibrate re_d_uniform.
_M_IM = 1.311468
_NU_RE = 0.462350
_MU_PRODUCT = 0.532408


class DomainError(ValueError):
    """A closed-form expression was evaluated outside its valid range."""


@dataclass(frozen=True)
class GaussianParams:
    """Shape and scale of the constant-splitting/Gaussian-coupling model.

    coupling_amplitude: peak of the Gaussian off-diagonal, rad/time.
    splitting: constant diagonal gap, rad/time.
    T: Gaussian width, time.
    """

    coupling_amplitude: float
    splitting: float
    T: float

    def __post_init__(self) -> None:
        for name in ("coupling_amplitude", "splitting", "T"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive")

    @property
    def alpha(self) -> float:
        """Dimensionless peak-to-gap ratio; the exact field quotient."""
        return self.coupling_amplitude / self.splitting

    @property
    def action(self) -> float:
        """Overall phase-integral scale splitting*T."""
        return self.splitting * self.T


def superadiabatic_image(omega0: float, T: float) -> GaussianParams:
    """Gaussian-model image of the erf pulse in its adiabatic frame.

    The erf pulse with gap omega0 and width T has constant quasienergy
    splitting omega0 and a Gaussian nonadiabatic coupling whose doubled
    peak is sqrt(pi)/T, so alpha = sqrt(pi)/(T*omega0).
    """
    return GaussianParams(coupling_amplitude=_SQRT_PI / T, splitting=omega0, T=T)


def to_pulse_model(params: GaussianParams) -> PulseModel:
    """The same model as a PulseModel, for the ODE and DDP engines."""
    return make_gaussian(params.coupling_amplitude, params.splitting, params.T)


def transition_points_closed(
    params: GaussianParams, k: int
) -> tuple[complex, complex]:
    """Zeros of E^2 in dimensionless time: (tau_k^-, tau_k^+).

    tau_k^+- = +-xi_k + i*eta_k with
      xi_k  = 1/2 sqrt(s_k + 2 ln alpha),
      eta_k = 1/2 sqrt(s_k - 2 ln alpha),
      s_k   = sqrt(4 ln^2 alpha + (2k+1)^2 pi^2).

    The subtracted form loses digits when |ln alpha| dominates s_k, so the
    smaller of the two radicands is rewritten as c^2/(larger radicand).
    """
    if k < 0:
        raise DomainError("k must be a non-negative integer")
    la = math.log(params.alpha)
    c = (2 * k + 1) * math.pi
    s = math.hypot(2.0 * la, c)
    if la <= 0.0:
        eta = 0.5 * math.sqrt(s - 2.0 * la)
        xi = 0.25 * c / eta
    else:
        xi = 0.5 * math.sqrt(s + 2.0 * la)
        eta = 0.25 * c / xi
    return complex(-xi, eta), complex(xi, eta)


def transition_points_small_alpha(
    params: GaussianParams, k: int
) -> tuple[complex, complex]:
    """Leading small-alpha behavior of the zeros: (tau_k^-, tau_k^+).

    xi_k ~ (2k+1) pi / (4 sqrt(ln(1/alpha))), eta_k ~ sqrt(ln(1/alpha)).
    """
    if k < 0:
        raise DomainError("k must be a non-negative integer")
    if params.alpha >= 1.0:
        raise DomainError(
            f"small-alpha asymptotics need alpha < 1, got alpha = {params.alpha}"
        )
    root = math.sqrt(math.log(1.0 / params.alpha))
    xi = (2 * k + 1) * math.pi / (4.0 * root)
    return complex(-xi, root), complex(xi, root)


def ddp_series_small_alpha(params: GaussianParams, n_max: int) -> complex:
    """Phase integral D(tau_0^+) from the binomial series of E.

    D = splitting*T * [tau_0^+ + sum_{n>=1} (-1)^{n-1} ((2n-3)!!/(2n)!!)
        * alpha^{2n} * sqrt(pi) * erf(tau_0^+ sqrt(2n)) / (2 sqrt(2n))].

    Term-by-term integration of the expansion of sqrt(1 + alpha^2
    e^{-2 tau^2}) is justified for alpha < 1, where the expansion point
    stays inside the convergence disk along the whole path.  Note the
    endpoint itself sits on the disk boundary, so convergence in n_max is
    algebraic, not geometric.
    """
    alpha = params.alpha
    if alpha >= 1.0:
        raise DomainError(f"series requires alpha < 1, got alpha = {alpha}")
    if n_max < 0:
        raise DomainError("n_max must be a non-negative integer")
    tau = transition_points_closed(params, 0)[1]
    total = complex(tau)
    ratio = 0.5  # (2n-3)!!/(2n)!! at n = 1
    a2n = alpha * alpha
    sign = 1.0
    for n in range(1, n_max + 1):
        r2n = math.sqrt(2.0 * n)
        erf_val, saturated = complex_erf_info(tau * r2n)
        if saturated:
            # past 2n ln(1/alpha) ~ 700 the erf factor overflows while
            # alpha^{2n} underflows; their product is still O(n^{-5/2})
            # but the clamped factors would inject garbage, and the true
            # remainder is below the series' algebraic tail, so stop
            break
        term = ratio * a2n * _SQRT_PI * erf_val / (2.0 * r2n)
        total += sign * term
        ratio *= (2.0 * n - 1.0) / (2.0 * n + 2.0)
        a2n *= alpha * alpha
        sign = -sign
    return params.action * total


def im_d_uniform(params: GaussianParams) -> float:
    """Uniform approximation of Im D(tau_0), exact at alpha = 1.

    Im D = 1/2 splitting*T sqrt(sqrt(4 ln^2(m alpha) + pi^2) - 2 ln(m alpha))
    with m = 1.311468.
    """
    la = math.log(_M_IM * params.alpha)
    s = math.hypot(2.0 * la, math.pi)
    return 0.5 * params.action * math.sqrt(s - 2.0 * la)


def im_d_small_alpha_limit(params: GaussianParams) -> float:
    """Leading small-alpha behavior of im_d_uniform: splitting*T sqrt(ln(m/alpha)).

    Asymptotically equivalent to the uniform form as alpha -> 0 (the ratio
    tends to 1); useful as a scale estimate, not a tight approximation.
    """
    alpha = params.alpha
    if alpha >= _M_IM:
        raise DomainError(
            f"limit form needs alpha < m = {_M_IM}, got alpha = {alpha}"
        )
    return params.action * math.sqrt(math.log(_M_IM / alpha))


def re_d_uniform(params: GaussianParams) -> float:
    """Uniform approximation of Re D(tau_0^+) as splitting*T*(I1 + I2).

    I1 = (sqrt(alpha^2+1) - 1) * sqrt(1/2 ln(alpha^2 / ((1 + nu g)^2 - 1)))
         with g = sqrt(alpha^2+1) - 1 and nu = 0.462350,
    I2 = 1/2 sqrt(sqrt(ln^2(alpha^2/q) + pi^2) + ln(alpha^2/q))
         with q = mu(2-mu) = 0.532408.
    """
    alpha = params.alpha
    a2 = alpha * alpha
    g = a2 / (math.sqrt(a2 + 1.0) + 1.0)  # sqrt(alpha^2+1)-1 without cancellation
    denom = _NU_RE * g * (2.0 + _NU_RE * g)  # (1+nu g)^2 - 1
    radicand = 0.5 * math.log(a2 / denom)
    if radicand < 0.0:
        raise DomainError(
            f"I1 logarithm is negative at alpha = {alpha}; the approximation "
            "does not apply there"
        )
    i1 = g * math.sqrt(radicand)
    lq = math.log(a2 / _MU_PRODUCT)
    i2 = 0.5 * math.sqrt(math.hypot(lq, math.pi) + lq)
    return params.action * (i1 + i2)


def probability_two_point(re_d: float, im_d: float) -> float:
    """Interference of the lowest pair: 4 e^{-2 Im D} sin^2(Re D).

    Not clipped to [0, 1]; the two-point form can exceed unity when Im D
    is small, and reporting layers decide how to present that.
    """
    if im_d < 0.0:
        raise DomainError(f"im_d must be non-negative, got {im_d}")
    s = math.sin(re_d)
    return 4.0 * math.exp(-2.0 * im_d) * s * s


def probability_all_points(re_d: float, im_d: float) -> float:
    """All-point resummation: sin^2(Re D) / cosh^2(Im D).

    Bounded by 1 and reduces to the two-point form for large Im D.
    """
    if im_d < 0.0:
        raise DomainError(f"im_d must be non-negative, got {im_d}")
    e = math.exp(-im_d)
    sech = 2.0 * e / (1.0 + e * e)
    s = math.sin(re_d)
    return s * s * sech * sech
