"""Collisional decoherence of bosons trapped at two sites in an ideal
buffer gas: thermal interference factor, exact two-scatterer scattering,
nonperturbative rates, bound states, time-domain oracles, and the
mean-free-path correction."""

from .born_markov import (bm_evolve, bm_exponents, bm_rates, rate_R,
                          rate_R_asymptote, rate_R_quadrature)
from .bound_states import (BoundState, bound_overlap_c, count_bound_states,
                           count_from_lengths, find_bound_states,
                           states_from_lengths)
from .core import (DensityMatrix, FrontProximityError, InvalidInputError,
                   NearSingularError, NumericsError, Occupation, Params,
                   PhysicalInputs, fock_basis, g1, gamma_scale)
from .exact_rates import (RateResult, decoherence_D, exact_evolve,
                          finite_N_factor, frequency_shift_omega,
                          gamma_exact, gamma_weak_reference, rate_result)
from .mfp import (delta_lorentzian, inner_kernel, inner_kernel_limit,
                  rate_R_tilde, rate_R_tilde_lengths)
from .scattering import (ScatteringSolution, forward_rate_A,
                         lindblad_factors, pair_kernel_B,
                         scattering_amplitude, solve_alphas)
from .time_domain import (asymptotic_wave, envelope_norm_slope, evolve_wave,
                          ortho_residual, saddle_contribution,
                          scat_norm_growth, scattered_wave)

__version__ = "0.1.0"

__all__ = [
    "BoundState", "DensityMatrix", "FrontProximityError",
    "InvalidInputError", "NearSingularError", "NumericsError", "Occupation",
    "Params", "PhysicalInputs", "RateResult", "ScatteringSolution",
    "asymptotic_wave", "bm_evolve", "bm_exponents", "bm_rates",
    "bound_overlap_c", "count_bound_states", "count_from_lengths",
    "decoherence_D", "delta_lorentzian", "envelope_norm_slope",
    "exact_evolve", "evolve_wave", "find_bound_states", "finite_N_factor",
    "fock_basis", "forward_rate_A", "frequency_shift_omega", "g1",
    "gamma_exact", "gamma_scale", "gamma_weak_reference", "inner_kernel",
    "inner_kernel_limit", "lindblad_factors", "ortho_residual",
    "pair_kernel_B", "rate_R", "rate_R_asymptote", "rate_R_quadrature",
    "rate_R_tilde", "rate_R_tilde_lengths", "rate_result",
    "saddle_contribution", "scat_norm_growth", "scattered_wave",
    "scattering_amplitude", "solve_alphas", "states_from_lengths",
]
