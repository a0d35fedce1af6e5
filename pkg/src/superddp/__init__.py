"""Two-state transition probabilities three ways: exact ODE integration,
generic complex-asymptotic (DDP) analysis, and closed forms for the
constant-splitting/Gaussian-coupling model.

The package is organized around PulseModel (a concrete Omega/Delta pair
evaluable at complex time), a propagator that integrates the Schrodinger
equation in either basis, a DDP engine that finds complex zeros of the
quasienergy splitting and evaluates the asymptotic formulas, and the
closed-form stack for the Gaussian model that the erf pulse maps onto in
its adiabatic frame.
"""

from .cerf import complex_erf
from .core import (
    AmplitudePair,
    Basis,
    BasisMismatchError,
    DegenerateInputError,
    MixingAngle,
    adiabatic_hamiltonian,
    adiabatic_rotate,
    eigen_splitting,
    hamiltonian,
    mixing_angle,
    nonadiabatic_coupling,
)
from .ddp import (
    CapabilityError,
    CoverageWarning,
    DdpResult,
    LimitDivergenceError,
    PathRefinementError,
    SearchRegion,
    StokesResult,
    TransitionPoint,
    analyze,
    count_zeros,
    ddp_integral,
    ddp_probability_multi,
    ddp_probability_single,
    find_transition_points,
    gamma_factor,
    stokes_check,
)
from .families import (
    PulseModel,
    ShapeFunction,
    ValidationError,
    erf_shape,
    gaussian_shape,
    make_constant_splitting,
    make_erf,
    make_erf_deviated,
    make_gaussian,
    make_landau_zener,
    make_parametrized,
    tanh_shape,
)
from .gaussian import (
    DomainError,
    GaussianParams,
    ddp_series_small_alpha,
    im_d_small_alpha_limit,
    im_d_uniform,
    probability_all_points,
    probability_two_point,
    re_d_uniform,
    superadiabatic_image,
    to_pulse_model,
    transition_points_closed,
    transition_points_small_alpha,
)
from .propagator import (
    PropagationConfig,
    TransitionResult,
    WindowWarning,
    propagate,
    transition_probability,
)

__version__ = "1.0.0"

__all__ = [
    "AmplitudePair",
    "Basis",
    "BasisMismatchError",
    "CapabilityError",
    "CoverageWarning",
    "DdpResult",
    "DegenerateInputError",
    "DomainError",
    "GaussianParams",
    "LimitDivergenceError",
    "MixingAngle",
    "PathRefinementError",
    "PropagationConfig",
    "PulseModel",
    "SearchRegion",
    "ShapeFunction",
    "StokesResult",
    "TransitionPoint",
    "TransitionResult",
    "ValidationError",
    "WindowWarning",
    "adiabatic_hamiltonian",
    "adiabatic_rotate",
    "analyze",
    "complex_erf",
    "count_zeros",
    "ddp_integral",
    "ddp_probability_multi",
    "ddp_probability_single",
    "ddp_series_small_alpha",
    "eigen_splitting",
    "erf_shape",
    "find_transition_points",
    "gamma_factor",
    "gaussian_shape",
    "hamiltonian",
    "im_d_small_alpha_limit",
    "im_d_uniform",
    "make_constant_splitting",
    "make_erf",
    "make_erf_deviated",
    "make_gaussian",
    "make_landau_zener",
    "make_parametrized",
    "mixing_angle",
    "nonadiabatic_coupling",
    "probability_all_points",
    "probability_two_point",
    "propagate",
    "re_d_uniform",
    "stokes_check",
    "superadiabatic_image",
    "tanh_shape",
    "to_pulse_model",
    "transition_points_closed",
    "transition_points_small_alpha",
    "transition_probability",
    "__version__",
]
