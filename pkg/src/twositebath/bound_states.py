"""Two-scatterer bound states: existence count, roots, coefficients.

A bound state is a positive-imaginary-axis zero of Lambda(k): writing
k = iq, the condition Lambda(iq) = 0 is equivalent (for both a± nonzero) to

    (qs - s/a+)(qs - s/a-) = e^{-2qs}.

Energies are E = -hbar^2 q^2 / 2m. chi^2 is minus i times the residue of
1/Lambda at k = iq. The coefficient pair (w+, w-) follows the displayed
square-root formula; its relative sign is fixed here from the
boundary-condition null vector, which the square roots alone leave
ambiguous.

All functions take effective per-site lengths a± = a n±; the public
operations map (occ, params) onto them. q is returned in the inverse of
whatever length unit a± and s share (1/lambda through the public API).
"""

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .core import InvalidInputError, NumericsError

ROOT_TOL = 1e-14
TANGENCY_TOL = 1e-12


@dataclass(frozen=True)
class BoundState:
    """One bound state of the scatterer pair.

    q > 0 is the decay wavenumber (units 1/lambda via the public API);
    w_plus/w_minus are the site coefficients (complex when 1 - q a∓ < 0,
    principal branch, relative sign from the null vector); chi_sq satisfies
    i chi_sq = 1/Lambda'(iq). double_root marks the tangency convention at
    a+ a- = s^2.
    """

    q: float
    w_plus: complex
    w_minus: complex
    chi_sq: complex
    double_root: bool = False


def lambda_imag_axis(q, a_plus, a_minus, s):
    """Lambda evaluated at k = iq: (1-qa+)(1-qa-) - (a+a-/s^2) e^{-2qs}."""
    return ((1.0 - q * a_plus) * (1.0 - q * a_minus)
            - (a_plus * a_minus / (s * s)) * np.exp(-2.0 * q * s))


def lambda_prime_imag_axis(q, a_plus, a_minus, s):
    """dLambda/dk at k = iq; purely imaginary, equal to i*xi with
    xi = a+ + a- - 2q a+ a- - (2 a+ a-/s) e^{-2qs}."""
    xi = (a_plus + a_minus - 2.0 * q * a_plus * a_minus
          - (2.0 * a_plus * a_minus / s) * np.exp(-2.0 * q * s))
    return 1j * xi


def _root_function(u, s_over_ap, s_over_am):
    """h(u) = (u - s/a-)(u - s/a+) - e^{-2u}, u = q s."""
    return (u - s_over_ap) * (u - s_over_am) - np.exp(-2.0 * u)


def count_from_lengths(a_plus, a_minus, s):
    """Bound-state count for effective lengths: the sign trichotomy.

    2 if both a± > 0 and a+ a- < s^2; 0 if both a± < 0 and a+ a- < s^2;
    1 otherwise. A single active scatterer follows the one-scatterer rule
    (a > 0 binds); the tangency a+ a- = s^2 (within 1e-12) counts as 1
    with the double-root convention.
    """
    if a_plus == 0.0 and a_minus == 0.0:
        return 0
    if a_plus == 0.0 or a_minus == 0.0:
        active = a_plus if a_plus != 0.0 else a_minus
        return 1 if active > 0.0 else 0
    prod = a_plus * a_minus
    if abs(prod - s * s) <= TANGENCY_TOL * max(1.0, s * s):
        return 1
    if a_plus > 0.0 and a_minus > 0.0 and prod < s * s:
        return 2
    if a_plus < 0.0 and a_minus < 0.0 and prod < s * s:
        return 0
    return 1


def _bracket_roots(s_over_ap, s_over_am, u_max, count):
    """Bracket the positive roots of h using the known count.

    One root: h(0) < 0 < h(u_max), a single crossing. Two roots (both
    lengths positive, product below s^2): h(0) > 0 around a single dip
    whose floor is the unique zero of h' (h'(0) = 2 - sum < 0 by AM-GM,
    h' eventually increasing). The dip can be far narrower than any
    fixed scan grid, e.g. width ~e^{-u} for near-equal s/a, so the
    brackets come from h' rather than from sampling h.
    """
    args = (s_over_ap, s_over_am)
    kw = dict(xtol=ROOT_TOL, rtol=4.0 * np.finfo(float).eps)
    if count == 1:
        return [optimize.brentq(_root_function, 0.0, u_max,
                                args=args, **kw)]

    def h_prime(u):
        return 2.0 * u - s_over_ap - s_over_am + 2.0 * np.exp(-2.0 * u)

    u_star = optimize.brentq(h_prime, 0.0, u_max, **kw)
    floor = _root_function(u_star, s_over_ap, s_over_am)
    if floor >= 0.0:
        raise NumericsError(
            "two-root dip unresolved at double precision: min h = "
            f"{floor:.3e} at u = {u_star:.6f} "
            f"(s/a+ = {s_over_ap}, s/a- = {s_over_am})")
    return [optimize.brentq(_root_function, 0.0, u_star, args=args, **kw),
            optimize.brentq(_root_function, u_star, u_max, args=args, **kw)]


def _tangency_root(s_over_ap, s_over_am, u_max):
    """Double root at the a+ a- = s^2 boundary: the minimum of h."""
    res = optimize.minimize_scalar(
        lambda u: _root_function(u, s_over_ap, s_over_am),
        bounds=(1e-12, u_max), method="bounded",
        options={"xatol": 1e-13})
    if res.fun > 1e-8:
        raise NumericsError(
            "tangency root not found: min h = "
            f"{res.fun:.3e} at u = {res.x:.6f}")
    return float(res.x)


def _null_sign(q, a_plus, a_minus, s):
    """Sign of w-/w+ from the homogeneous system at k = iq.

    A+ w+ + B+ w- = 0 with A+ = 1 - q a+ and B+ = (a+/s) e^{-qs} > 0 or < 0
    with a+; the ratio is -s(1 - q a+) e^{qs}/a+.
    """
    val = -(1.0 - q * a_plus) * a_plus
    if val == 0.0:
        # fall back to the other row: A- w- + B- w+ = 0
        val = -(1.0 - q * a_minus) * a_minus
    return 1.0 if val >= 0.0 else -1.0


def states_from_lengths(a_plus, a_minus, s):
    """All bound states for effective lengths (a+, a-) at separation s.

    Returns
    -------
    list of BoundState, ascending q.

    Raises
    ------
    NumericsError
        If a two-root dip is too shallow to resolve at double precision
        (near-degenerate pair; diagnostics included).
    """
    count = count_from_lengths(a_plus, a_minus, s)
    if count == 0:
        return []

    if a_plus == 0.0 or a_minus == 0.0:
        # single active scatterer: Lambda = 1 + i a k, pole at q = 1/a
        active_plus = a_plus != 0.0
        a = a_plus if active_plus else a_minus
        q = 1.0 / a
        chi_sq = -1.0 / a  # -i / Lambda'(iq) with Lambda' = i a
        w_active = np.sqrt(chi_sq + 0.0j) * np.sqrt(q * a) / np.sqrt(2.0 * np.pi)
        w_p, w_m = (w_active, 0.0) if active_plus else (0.0, w_active)
        return [BoundState(q=q, w_plus=w_p, w_minus=w_m, chi_sq=chi_sq)]

    s_over_ap, s_over_am = s / a_plus, s / a_minus
    u_max = max(10.0, 2.0 * max(abs(s_over_ap), abs(s_over_am)) + 10.0)
    double = abs(a_plus * a_minus - s * s) <= TANGENCY_TOL * max(1.0, s * s)
    if double:
        roots = [_tangency_root(s_over_ap, s_over_am, u_max)]
    else:
        roots = _bracket_roots(s_over_ap, s_over_am, u_max, count)

    states = []
    for u in sorted(roots):
        q = u / s
        lam_p = lambda_prime_imag_axis(q, a_plus, a_minus, s)
        if lam_p == 0.0:
            raise NumericsError(
                f"degenerate double pole at q = {q}: residue undefined")
        chi_sq = -1j / lam_p
        pref = np.sqrt(chi_sq + 0.0j) / np.sqrt(2.0 * np.pi)
        w_p = pref * np.sqrt(complex(q * a_plus * (1.0 - q * a_minus)))
        w_m = pref * np.sqrt(complex(q * a_minus * (1.0 - q * a_plus)))
        w_m = w_m * _null_sign(q, a_plus, a_minus, s)
        states.append(BoundState(q=q, w_plus=complex(w_p),
                                 w_minus=complex(w_m), chi_sq=complex(chi_sq),
                                 double_root=double))
    return states


def count_bound_states(occ, params):
    """Number of two-scatterer bound states for this occupation: 0, 1 or 2."""
    params.require_separated("count_bound_states")
    a_p, a_m = occ.effective_lengths(params.a_over_lambda)
    return count_from_lengths(a_p, a_m, params.s_over_lambda)


def find_bound_states(occ, params):
    """Bound states for this occupation; q in units 1/lambda.

    The list length always equals count_bound_states(occ, params).
    """
    params.require_separated("find_bound_states")
    a_p, a_m = occ.effective_lengths(params.a_over_lambda)
    return states_from_lengths(a_p, a_m, params.s_over_lambda)


def bound_overlap_c(k0, incidence_cos, state, params):
    """Overlap of the incident plane wave with one bound state:

    c = (1/sqrt(2 pi)) (w+ e^{+i phi0} + w- e^{-i phi0}) / (q^2 + k0^2),
    phi0 = k0 s cos(theta)/2. Decays like 1/k0^2 at large k0.
    """
    if k0 <= 0.0:
        raise InvalidInputError("bound_overlap_c requires k0 > 0")
    phi0 = k0 * params.s_over_lambda * incidence_cos / 2.0
    return ((state.w_plus * np.exp(1j * phi0)
             + state.w_minus * np.exp(-1j * phi0))
            / (np.sqrt(2.0 * np.pi) * (state.q ** 2 + k0 ** 2)))
