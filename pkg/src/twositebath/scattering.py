"""Exact two-scatterer eigenstate pieces.

Linear-system coefficients alpha±, the scattering amplitude, the forward
rate A and pair kernel B (in units with the prefactor 2 pi n_B hbar/m
normalized out; the thermal Gaussian average restores Gamma downstream),
and the Cholesky Lindblad factorization of the pair kernel.

Geometry: the incidence direction enters only through cos(theta) between
the wavevector and the site axis; all formulas depend on k.s alone.
"""

from dataclasses import dataclass

import numpy as np

from .core import InvalidInputError, NearSingularError, Occupation


def sinc_ks(x):
    """sin(x)/x with a series guard below |x| < 1e-4 (no 0/0)."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    out = np.where(small, 1.0 - x * x / 6.0, np.sin(safe) / safe)
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class ScatteringSolution:
    """Coefficients of the two-site scattering state at one wavevector.

    a± = a n± are the effective per-site lengths; A± = 1 + i a± k,
    B± = (a±/s) e^{iks}, Lambda = A+A- - B+B-; alpha± solve the coupled
    pair of boundary conditions for incidence phase k s cos(theta)/2.
    All lengths in units of lambda, k in 1/lambda.
    """

    k: float
    incidence_cos: float
    occ: Occupation
    s: float
    a_plus: float
    a_minus: float
    A_plus: complex
    A_minus: complex
    B_plus: complex
    B_minus: complex
    Lambda: complex
    alpha_plus: complex
    alpha_minus: complex


def solve_alphas(k, incidence_cos, occ, params):
    """Solve the coupled pair A± alpha± + B± alpha∓ = a± e^{±i k.s/2}.

    Parameters
    ----------
    k : float
        Wavenumber, units 1/lambda, > 0.
    incidence_cos : float
        cos(theta) between the incident wavevector and the site axis.
    occ : Occupation
    params : Params

    Returns
    -------
    ScatteringSolution

    Raises
    ------
    NearSingularError
        If |Lambda| < 1e-10 max(1, |A+ A-|); never regularized.
    """
    if k <= 0.0:
        raise InvalidInputError("solve_alphas requires k > 0")
    if not -1.0 <= incidence_cos <= 1.0:
        raise InvalidInputError("incidence_cos must lie in [-1, 1]")
    params.require_separated("solve_alphas")
    s = params.s_over_lambda
    a_p, a_m = occ.effective_lengths(params.a_over_lambda)

    A_p, A_m = 1.0 + 1j * a_p * k, 1.0 + 1j * a_m * k
    B_p = (a_p / s) * np.exp(1j * k * s)
    B_m = (a_m / s) * np.exp(1j * k * s)
    Lam = A_p * A_m - B_p * B_m
    if abs(Lam) < 1e-10 * max(1.0, abs(A_p * A_m)):
        raise NearSingularError(
            f"|Lambda(k={k})| = {abs(Lam):.3e} is below threshold")

    phi = k * s * incidence_cos / 2.0
    al_p = a_p * (A_m * np.exp(1j * phi) - B_m * np.exp(-1j * phi)) / Lam
    al_m = a_m * (A_p * np.exp(-1j * phi) - B_p * np.exp(1j * phi)) / Lam
    return ScatteringSolution(
        k=k, incidence_cos=incidence_cos, occ=occ, s=s,
        a_plus=a_p, a_minus=a_m,
        A_plus=A_p, A_minus=A_m, B_plus=B_p, B_minus=B_m,
        Lambda=Lam, alpha_plus=al_p, alpha_minus=al_m)


def scattering_amplitude(solution, out_dir_cos):
    """Outgoing amplitude f(r_hat) = -sum_± alpha± e^{∓i k r_hat.s/2}.

    out_dir_cos is cos(theta) between the outgoing direction and the site
    axis. Identically zero for empty traps.
    """
    psi = solution.k * solution.s * out_dir_cos / 2.0
    return -(solution.alpha_plus * np.exp(-1j * psi)
             + solution.alpha_minus * np.exp(1j * psi))


def forward_rate_A(solution):
    """Forward rate A = -i f(k_hat), the 2 pi n_B hbar/m prefactor
    normalized out. Its real part equals the diagonal pair kernel
    (optical theorem)."""
    return -1j * scattering_amplitude(solution, solution.incidence_cos)


def pair_kernel_B(k, incidence_cos, occ, occ_prime, params):
    """Pair kernel B(n, n') = k sum_± alpha±(n) [alpha±*(n') +
    sinc(ks) alpha∓*(n')], same normalization as forward_rate_A.

    Hermitian in (n, n'); positive semidefinite as a kernel over
    occupations; B(n, n) = Re A(n).
    """
    sol = solve_alphas(k, incidence_cos, occ, params)
    sol_p = solve_alphas(k, incidence_cos, occ_prime, params)
    sc = sinc_ks(k * params.s_over_lambda)
    return k * (
        sol.alpha_plus * (np.conj(sol_p.alpha_plus)
                          + sc * np.conj(sol_p.alpha_minus))
        + sol.alpha_minus * (np.conj(sol_p.alpha_minus)
                             + sc * np.conj(sol_p.alpha_plus)))


def lindblad_factors(k, incidence_cos, occ, params):
    """Jump-operator amplitudes (G1, G2) with
    B(n, n') = G1(n) G1*(n') + G2(n) G2*(n').

    The 2x2 weight matrix k [[1, sinc(ks)], [sinc(ks), 1]] acting on
    (alpha+, alpha-) is positive semidefinite because |sinc| <= 1; its
    Cholesky factor gives the minimal two-operator factorization:
    G1 = sqrt(k) (alpha+ + sinc alpha-), G2 = sqrt(k(1-sinc^2)) alpha-.
    """
    sol = solve_alphas(k, incidence_cos, occ, params)
    sc = sinc_ks(k * params.s_over_lambda)
    root_k = np.sqrt(k)
    G1 = root_k * (sol.alpha_plus + sc * sol.alpha_minus)
    G2 = root_k * np.sqrt(max(0.0, 1.0 - sc * sc)) * sol.alpha_minus
    return G1, G2
