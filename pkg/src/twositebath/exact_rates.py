"""Non-perturbative decoherence rates.

Thermally averaged pair rate gamma(n, n'), decoherence exponent
D = gamma(n,n) + gamma(n',n') - 2 gamma(n,n'), frequency shift Omega, the
late-time density-matrix evolution they generate, and the finite-particle-
number factor. Everything is in units of Gamma (see core.gamma_scale).

The radial integrand here is a closed angular reduction of the pair
kernel; it deliberately shares no code with scattering.pair_kernel_B so the
two paths can cross-check each other.
"""

from dataclasses import dataclass

import numpy as np

from .born_markov import rate_R
from .core import (DensityMatrix, InvalidInputError, NearSingularError,
                   Occupation)
from .quadrature import integrate_adaptive, uniform_edges
from .scattering import sinc_ks

Z_MAX = 6.5        # e^{-z^2} < 1e-18 beyond
REL_TOL = 1e-10


def _lambda_arr(z, a_p, a_m, s):
    """Two-site denominator Lambda(z) over an array of radial wavenumbers."""
    return ((1.0 + 1j * a_p * z) * (1.0 + 1j * a_m * z)
            - (a_p * a_m / (s * s)) * np.exp(2j * z * s))


def _radial_edges(s):
    """Seed panels resolving the e^{±2izs} oscillation (width <= pi/(4s))."""
    width = min(0.5, np.pi / (4.0 * s))
    return uniform_edges(0.0, Z_MAX, width)


def gamma_exact(occ, occ_prime, params):
    """Thermally averaged complex pair rate gamma(n, n') in units of Gamma.

    gamma(n,n')/Gamma = 4 Int_0^inf dz z^3 e^{-z^2}
                        brace(z; n, n') / (Lambda(n; z) Lambda*(n'; z))

    where the brace carries the angular average of the pair kernel over
    incidence directions. gamma(n, n) is real and >= 0;
    gamma(n, n') = conj gamma(n', n).

    Raises
    ------
    NearSingularError
        If |Lambda| drops below 1e-10 at any quadrature node (the offending
        z is reported).
    """
    params.require_separated("gamma_exact")
    a = params.a_over_lambda
    s = params.s_over_lambda
    np1, nm1 = occ.n_plus, occ.n_minus
    np2, nm2 = occ_prime.n_plus, occ_prime.n_minus
    if (np1 == nm1 == 0) and (np2 == nm2 == 0):
        return 0.0 + 0.0j
    N1, N2 = occ.total, occ_prime.total
    pair1, pair2 = np1 * nm1, np2 * nm2

    def integrand(z):
        u = z * s
        snc = sinc_ks(u)
        snc2 = snc * snc
        # angular average of the pair kernel, closed form
        brace = (2.0 * ((a * a / (s * s) + a * a * z * z) * (1.0 + snc2)
                        - 4.0 * (a * a / (s * s)) * np.sin(u) ** 2)
                 * pair1 * pair2
                 + 1j * a * z * (1.0 - snc2) * (pair1 * N2 - N1 * pair2)
                 - 2.0 * (a / s) * np.cos(u) * snc * (pair1 * N2 + N1 * pair2)
                 + np1 * np2 + nm1 * nm2 + snc2 * (np1 * nm2 + nm1 * np2))
        lam1 = _lambda_arr(z, a * np1, a * nm1, s)
        lam2 = _lambda_arr(z, a * np2, a * nm2, s)
        bad = np.abs(lam1) < 1e-10
        bad |= np.abs(lam2) < 1e-10
        if np.any(bad):
            z_bad = np.atleast_1d(z)[np.atleast_1d(bad)][0]
            raise NearSingularError(
                f"|Lambda| below threshold at z = {z_bad}")
        return z ** 3 * np.exp(-z * z) * brace / (lam1 * np.conj(lam2))

    val = integrate_adaptive(integrand, 0.0, Z_MAX, rel_tol=REL_TOL,
                             initial_edges=_radial_edges(s))
    return 4.0 * complex(val)


def gamma_weak_reference(occ, occ_prime, params):
    """Born-Markov comparator Gamma[(1+R) N N' + (1-R) n n'] (units Gamma)."""
    R = rate_R(params.s_over_lambda)
    return ((1.0 + R) * occ.total * occ_prime.total
            + (1.0 - R) * occ.relative * occ_prime.relative)


def decoherence_D(occ, occ_prime, params):
    """Decoherence exponent D = gamma(n,n) + gamma(n',n') - 2 gamma(n,n').

    Re D >= 0 (kernel positivity); D(n, n) = 0; D(n,n') = conj D(n',n).
    """
    return (gamma_exact(occ, occ, params).real
            + gamma_exact(occ_prime, occ_prime, params).real
            - 2.0 * gamma_exact(occ, occ_prime, params))


def frequency_shift_omega(occ, params):
    """Hamiltonian-level frequency shift Omega(n) in units of Gamma.

    Omega/Gamma = (4/a^2) Int_0^inf dz z^2 e^{-z^2}
                  Re{[a+(A- - sinc(zs) B-) + a-(A+ - sinc(zs) B+)]/Lambda},
    the Gaussian average of the imaginary part of the forward rate. First
    order in a, so it flips sign with a in the weak limit.
    """
    params.require_separated("frequency_shift_omega")
    a = params.a_over_lambda
    s = params.s_over_lambda
    a_p, a_m = occ.effective_lengths(a)
    if (a_p == 0.0 and a_m == 0.0) or a == 0.0:
        return 0.0

    def integrand(z):
        A_p, A_m = 1.0 + 1j * a_p * z, 1.0 + 1j * a_m * z
        B_p = (a_p / s) * np.exp(1j * z * s)
        B_m = (a_m / s) * np.exp(1j * z * s)
        lam = A_p * A_m - B_p * B_m
        bad = np.abs(lam) < 1e-10
        if np.any(bad):
            z_bad = np.atleast_1d(z)[np.atleast_1d(bad)][0]
            raise NearSingularError(
                f"|Lambda| below threshold at z = {z_bad}")
        snc = sinc_ks(z * s)
        fwd = (a_p * (A_m - snc * B_m) + a_m * (A_p - snc * B_p)) / lam
        return z * z * np.exp(-z * z) * np.real(fwd)

    val = integrate_adaptive(integrand, 0.0, Z_MAX, rel_tol=REL_TOL,
                             initial_edges=_radial_edges(s))
    return 4.0 * float(np.real(val)) / (a * a)


@dataclass(frozen=True)
class RateResult:
    """gamma, D and omega for one occupation pair, all in units of Gamma."""

    gamma: complex
    D: complex
    omega: float       # shift of the ket occupation


def rate_result(occ, occ_prime, params):
    """Bundle gamma(n,n'), D(n,n') and Omega(n) for one pair."""
    return RateResult(gamma=gamma_exact(occ, occ_prime, params),
                      D=decoherence_D(occ, occ_prime, params),
                      omega=frequency_shift_omega(occ, params))


def exact_evolve(rho0, t, params):
    """Late-time evolution: each entry (n, n') is multiplied by
    e^{-it Omega(n)} e^{+it Omega(n')} e^{-t D(n,n')}, t in units 1/Gamma.

    Trace and Hermiticity preserved, diagonals constant; reduces to
    bm_evolve entrywise as a/lambda -> 0.
    """
    if t < 0.0:
        raise InvalidInputError("exact_evolve requires t >= 0")
    basis = rho0.basis
    omegas = [frequency_shift_omega(o, params) for o in basis]
    gammas_diag = [gamma_exact(o, o, params).real for o in basis]
    out = rho0.matrix.copy()
    cache = {}
    for i, occ in enumerate(basis):
        for j, occp in enumerate(basis):
            if i == j:
                continue
            if (j, i) in cache:
                D = np.conj(cache[(j, i)])
            else:
                D = (gammas_diag[i] + gammas_diag[j]
                     - 2.0 * gamma_exact(occ, occp, params))
                cache[(i, j)] = D
            out[i, j] *= np.exp(-1j * t * (omegas[i] - omegas[j])
                                - t * D)
    return DensityMatrix(out, max_total=rho0.max_total)


def finite_N_factor(occ, occ_prime, params, t, N_B):
    """Finite-buffer-number evolution factor
    [1 + (t/N_B)(-i dOmega - D)]^{N_B}, dOmega = Omega(n) - Omega(n').

    Converges to e^{-it dOmega} e^{-t D} as N_B -> infinity.
    """
    if N_B < 1:
        raise InvalidInputError("finite_N_factor requires N_B >= 1")
    dOm = (frequency_shift_omega(occ, params)
           - frequency_shift_omega(occ_prime, params))
    D = decoherence_D(occ, occ_prime, params)
    base = 1.0 + (t / N_B) * (-1j * dOm - D)
    return base ** N_B
