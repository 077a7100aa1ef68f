"""Weak-coupling master-equation layer.

Rate function R(x), the (total, relative)-number decay exponents it
controls, and the closed-form density-matrix evolution. R is available
through two independent paths: the Dawson-function closed form (production)
and an adaptive quadrature of its defining integral (oracle).
"""

from dataclasses import dataclass

import numpy as np
from scipy import special

from .core import DensityMatrix, InvalidInputError
from .quadrature import integrate_adaptive, uniform_edges

# below this the 2/x^2 prefactor of the defining integral is numerically
# singular; switch to the series
SERIES_CUTOFF = 1e-3


def rate_R(x):
    """Rate coefficient R(x) = (2/x^2) Int_0^inf dxi xi sin^2(x xi) e^{-xi^2}.

    Closed form: writing 2 sin^2 = 1 - cos and integrating reduces the
    integral to R(x) = dawsn(x)/x, with R(0) = 1.

    Parameters
    ----------
    x : float
        Separation in units of lambda, >= 0.

    Returns
    -------
    float
        R(x) in [0, 1], monotone decreasing, -> 1/(2x^2) for large x.
    """
    if x < 0.0:
        raise InvalidInputError("rate_R requires x >= 0")
    if x < SERIES_CUTOFF:
        # dawsn(x)/x = 1 - (2/3)x^2 + (4/15)x^4 - (8/105)x^6 + ...
        x2 = x * x
        return 1.0 + x2 * (-2.0 / 3.0 + x2 * (4.0 / 15.0 - x2 * 8.0 / 105.0))
    return float(special.dawsn(x) / x)


def rate_R_quadrature(x, rel_tol=1e-11, z_max=6.5):
    """Quadrature oracle for R(x): direct adaptive evaluation of the
    defining integral on [0, z_max] (weight e^{-z^2} < 1e-18 beyond 6.5).

    Kept implementation-independent from rate_R on purpose; tests compare
    the two.
    """
    if x < 0.0:
        raise InvalidInputError("rate_R_quadrature requires x >= 0")
    if x == 0.0:
        # integrand -> x^2 xi^3: the prefactor limit is analytic
        return 1.0

    def integrand(z):
        return z * np.sin(x * z) ** 2 * np.exp(-z * z)

    # seed panels no wider than a third of the sin^2 period
    width = min(0.5, np.pi / (4.0 * x))
    edges = uniform_edges(0.0, z_max, width)
    val = integrate_adaptive(integrand, 0.0, z_max, rel_tol=rel_tol,
                             initial_edges=edges)
    return 2.0 * val / (x * x)


def rate_R_asymptote(x, terms=1):
    """Large-x asymptote of R(x).

    terms=1 gives the leading 1/(2x^2); terms=2 adds the next-order
    1/(4x^4) correction, terms=3 adds 3/(8x^6).
    """
    if x <= 0.0:
        raise InvalidInputError("asymptote needs x > 0")
    inv2 = 1.0 / (x * x)
    out = 0.5 * inv2
    if terms >= 2:
        out += 0.25 * inv2 * inv2
    if terms >= 3:
        out += 0.375 * inv2 * inv2 * inv2
    return out


@dataclass(frozen=True)
class BMDecayExponents:
    """Decay-rate coefficients in units of Gamma.

    total_rate multiplies (N - N')^2, relative_rate multiplies (n - n')^2;
    they are 1 + R and 1 - R, both in [0, 2].
    """

    total_rate: float
    relative_rate: float


def bm_rates(params):
    """The (1 + R, 1 - R) coefficient pair at this separation."""
    R = rate_R(params.s_over_lambda)
    return BMDecayExponents(total_rate=1.0 + R, relative_rate=1.0 - R)


def bm_exponents(N, n, N_prime, n_prime, params):
    """Decay exponent (1+R)(N-N')^2 + (1-R)(n-n')^2 in units of Gamma.

    Zero iff N = N' and n = n' (for 0 < R < 1); at s = 0 (R = 1) the
    relative channel drops out entirely and equal-N subspaces are
    decoherence free.
    """
    rates = bm_rates(params)
    dN, dn = N - N_prime, n - n_prime
    return rates.total_rate * dN * dN + rates.relative_rate * dn * dn


def bm_exponents_site_form(occ, occ_prime, params):
    """Equivalent site-occupation form of the decay exponent.

    2(dn+)^2 + 2(dn-)^2 + 4R dn+ dn- with dn± = n± - n±'; identical to
    bm_exponents for every occupation pair (algebraic identity).
    """
    R = rate_R(params.s_over_lambda)
    dp = occ.n_plus - occ_prime.n_plus
    dm = occ.n_minus - occ_prime.n_minus
    return 2.0 * dp * dp + 2.0 * dm * dm + 4.0 * R * dp * dm


def bm_evolve(rho0, t, params):
    """Evolve a density matrix for time t (units 1/Gamma).

    Each entry picks up exp(-exponent * t); diagonals are fixed, trace and
    Hermiticity are preserved, and the map is a semigroup in t.
    """
    if t < 0.0:
        raise InvalidInputError("bm_evolve requires t >= 0")
    rates = bm_rates(params)
    N = np.array([o.total for o in rho0.basis], dtype=float)
    n = np.array([o.relative for o in rho0.basis], dtype=float)
    exponent = (rates.total_rate * (N[:, None] - N[None, :]) ** 2
                + rates.relative_rate * (n[:, None] - n[None, :]) ** 2)
    out = rho0.matrix * np.exp(-exponent * t)
    return DensityMatrix(out, max_total=rho0.max_total)
