"""Dissipative two-level dynamics: Lindblad, anti-Hermitian, and hybrid.

The package propagates the 4-vector (s1, s2, s3, tr) of Pauli averages and
trace under a resonantly driven two-level model whose dissipation enters both
through a Lindblad emission channel and through an anti-Hermitian decay-rate
operator.  Closed-form branch solutions, matrix-exponential and RK4
propagation, steady states, observables, and Fourier diagnostics are exposed
here; the ``twolevel`` console script wraps them for CSV emission.
"""

from .closed_form import (
    AHAux,
    LindbladAux,
    SDAux,
    ah_aux,
    ah_eigenvalues,
    ah_normalized,
    ah_oscillatory,
    ah_solution,
    ah_steady,
    lindblad_aux,
    lindblad_eigenvalues,
    lindblad_solution,
    lindblad_steady,
    oscillation_period,
    sd_aux,
    sd_eigenvalues,
    sd_solution,
    sd_steady,
)
from .errors import DomainError, NumericsError
from .model import (
    PhysicalParams,
    ReducedParams,
    bloch_generator,
    build_m,
    master_rhs,
    normalized_rhs,
    reduce,
)
from .observables import (
    coherence_interaction,
    lower_population,
    to_schrodinger_coherence,
    upper_population,
)
from .pauli import (
    IDENTITY2,
    PAULI_BASIS,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    bloch_norm_sq,
    decompose,
    normalize,
    reconstruct,
)
from .propagate import (
    EvolveConfig,
    Trajectory,
    evolve_linear,
    evolve_rk4,
    expm4,
    propagator_sampler,
    steady_state,
)
from .spectra import (
    DecaySpectrum,
    PeriodicSpectrum,
    ZeroModulusWarning,
    fourier_coefficients_periodic,
    phase_series,
    regular_ft_decaying,
)

__version__ = "0.1.0"

__all__ = [
    "AHAux",
    "DecaySpectrum",
    "DomainError",
    "EvolveConfig",
    "IDENTITY2",
    "LindbladAux",
    "NumericsError",
    "PAULI_BASIS",
    "PeriodicSpectrum",
    "PhysicalParams",
    "ReducedParams",
    "SDAux",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "Trajectory",
    "ZeroModulusWarning",
    "ah_aux",
    "ah_eigenvalues",
    "ah_normalized",
    "ah_oscillatory",
    "ah_solution",
    "ah_steady",
    "bloch_generator",
    "bloch_norm_sq",
    "build_m",
    "coherence_interaction",
    "decompose",
    "evolve_linear",
    "evolve_rk4",
    "expm4",
    "fourier_coefficients_periodic",
    "lindblad_aux",
    "lindblad_eigenvalues",
    "lindblad_solution",
    "lindblad_steady",
    "lower_population",
    "master_rhs",
    "normalize",
    "normalized_rhs",
    "oscillation_period",
    "phase_series",
    "propagator_sampler",
    "reconstruct",
    "reduce",
    "regular_ft_decaying",
    "sd_aux",
    "sd_eigenvalues",
    "sd_solution",
    "sd_steady",
    "steady_state",
    "to_schrodinger_coherence",
    "upper_population",
]
