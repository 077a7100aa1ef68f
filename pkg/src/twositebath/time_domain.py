"""Exact single-particle time evolution around the scatterer pair.

Validation-oracle module: the evolved wave through a direct principal-value
quadrature, the step-gated asymptotic envelope, the alpha-bilinear
orthogonality identity, the linear growth of scattered probability, and the
stationary-phase front term.

Units here: hbar = m = 1 and all lengths in units of the separation s
(so s = 1 internally, effective lengths are a±/s, wavenumbers are k s and
times are in units of m s^2/hbar). The sites sit at ±s/2 on the z axis.
This is a correctness path, not a performance path.
"""

import numpy as np
from scipy import special

from .bound_states import states_from_lengths
from .core import FrontProximityError, InvalidInputError, Occupation
from .quadrature import gauss_legendre, panel_nodes

S = 1.0                 # site separation in its own units
MIN_SITE_DISTANCE = 1e-6


def _effective_lengths(occ, params):
    """a±/s for this occupation."""
    params.require_separated("time_domain")
    a_over_s = params.a_over_lambda / params.s_over_lambda
    return a_over_s * occ.n_plus, a_over_s * occ.n_minus


def _geometry(k_vec):
    """(magnitude, cos to site axis) of a wavevector; axis is z."""
    k_vec = np.asarray(k_vec, dtype=float)
    k = float(np.linalg.norm(k_vec))
    if k <= 0.0:
        raise InvalidInputError("wavevector must be nonzero")
    return k, float(k_vec[2] / k)


def _site_distances(r_vec):
    r_vec = np.asarray(r_vec, dtype=float)
    r_p = float(np.linalg.norm(r_vec - np.array([0.0, 0.0, S / 2])))
    r_m = float(np.linalg.norm(r_vec + np.array([0.0, 0.0, S / 2])))
    if min(r_p, r_m) < MIN_SITE_DISTANCE:
        raise InvalidInputError(
            "evaluation point coincides with a scatterer")
    return r_p, r_m


def _alphas_incident(k0, cos0, a_p, a_m):
    """alpha± for the incident wavevector (k0, cos0)."""
    A_p, A_m = 1.0 + 1j * a_p * k0, 1.0 + 1j * a_m * k0
    B_p = (a_p / S) * np.exp(1j * k0 * S)
    B_m = (a_m / S) * np.exp(1j * k0 * S)
    lam = A_p * A_m - B_p * B_m
    phi = k0 * S * cos0 / 2.0
    al_p = a_p * (A_m * np.exp(1j * phi) - B_m * np.exp(-1j * phi)) / lam
    al_m = a_m * (A_p * np.exp(-1j * phi) - B_p * np.exp(1j * phi)) / lam
    return al_p, al_m


def _albar(k, sgn, k0, cos0, a_p, a_m):
    """Off-shell coefficient albar_sgn(k): propagation factors at k,
    incident phases frozen at (k0, cos0). Vectorized in k."""
    a_self = a_p if sgn > 0 else a_m
    a_oth = a_m if sgn > 0 else a_p
    lam = ((1.0 + 1j * a_p * k) * (1.0 + 1j * a_m * k)
           - (a_p * a_m / S ** 2) * np.exp(2j * k * S))
    phi = k0 * S * cos0 / 2.0
    return a_self * ((1.0 + 1j * k * a_oth) * np.exp(1j * sgn * phi)
                     - (a_oth / S) * np.exp(1j * k * S)
                     * np.exp(-1j * sgn * phi)) / lam


def _pv_static(r, sgn, k0, cos0, a_p, a_m, k_max=3000.0):
    """PV radial integral at t = 0: fold onto [0, k_max], subtract the pole,
    add the analytic sine/cosine-integral tail for [k_max, inf)."""

    def folded(k):
        gp = k * _albar(k, sgn, k0, cos0, a_p, a_m) * np.exp(1j * k * r)
        gm = -k * _albar(-k, sgn, k0, cos0, a_p, a_m) * np.exp(-1j * k * r)
        return (gp + gm) / (k + k0)

    edges = [0.0]
    k = 0.0
    w0 = min(0.2, np.pi / (4.0 * (r + 1.0)))
    while k < k_max:
        w = w0
        d = abs(k - k0)
        if d < 1.0:
            w = min(w, max(d / 3.0, 1e-7))
        k += w
        edges.append(min(k, k_max))
    nodes, wts = panel_nodes(np.array(edges), 12)

    f_pole = complex(folded(np.array([k0]))[0])
    vals = (folded(nodes) - f_pole) / (nodes - k0)
    I = np.sum(wts * vals) + f_pole * np.log((k_max - k0) / k0)

    # tail: k albar_sgn(k) -> -i e^{i sgn phi0} as k -> inf; integrate the
    # remaining e^{±ikr}/(k^2-k0^2) pieces with sine/cosine integrals
    X1, X2 = (k_max - k0) * r, (k_max + k0) * r
    si1, ci1 = special.sici(X1)
    si2, ci2 = special.sici(X2)
    I1 = -np.cos(k0 * r) * ci1 - np.sin(k0 * r) * (np.pi / 2 - si1)
    I2 = -np.cos(k0 * r) * ci2 + np.sin(k0 * r) * (np.pi / 2 - si2)
    phi = k0 * S * cos0 / 2.0
    I += -2j * np.exp(1j * sgn * phi) * (I1 - I2) / (2.0 * k0)
    return -(1j / np.pi) * I / r


def _pv_time(r, t, sgn, k0, cos0, a_p, a_m):
    """PV radial integral at t > 0: fold, excise the pole symmetrically
    (half-width delta, analytic pair correction), oscillation-graded
    panels, and a three-term integration-by-parts tail at the cutoff K."""

    def gp(k):
        return (k * _albar(k, sgn, k0, cos0, a_p, a_m)
                * np.exp(1j * k * r - 0.5j * k * k * t))

    def gm(k):
        return (-k * _albar(-k, sgn, k0, cos0, a_p, a_m)
                * np.exp(-1j * k * r - 0.5j * k * k * t))

    def N(k):
        return (gp(k) + gm(k)) / (k + k0)

    K = max(2.0 * k0, 1.3 * r / t, k0 + 5.0, (r + 40.0) / t)
    delta = 1e-4 * k0

    def build(a, b):
        edges, k = [a], a
        while k < b:
            w = np.pi / (4.0 * (1.0 + r + S + t * max(k, 0.0)))
            w = min(w, max(abs(k - k0) / 3.0, delta))
            k = min(k + w, b)
            edges.append(k)
        return np.array(edges)

    I = 0.0 + 0.0j
    for a, b in ((0.0, k0 - delta), (k0 + delta, K)):
        nodes, wts = panel_nodes(build(a, b), 12)
        I += np.sum(wts * N(nodes) / (nodes - k0))

    # excised [k0-delta, k0+delta]: PV of N(k)/(k-k0) with N analytic gives
    # 2 delta N'(k0) + (delta^3/9) N'''(k0), derivatives by central FD
    h = delta
    Ns = N(k0 + np.array([-2.0 * h, -h, h, 2.0 * h]))
    I += (2.0 * delta * (Ns[2] - Ns[1]) / (2.0 * h)
          + (delta ** 3 / 9.0)
          * (Ns[3] - 2.0 * Ns[2] + 2.0 * Ns[1] - Ns[0]) / (2.0 * h ** 3))

    # tails past K, one per folded piece; stationary points lie below K by
    # construction of K, so repeated integration by parts in the phase works
    hh = 1e-5 * K
    for g, dth in ((lambda k: gp(k) / ((k + k0) * (k - k0)),
                    lambda k: r - k * t),
                   (lambda k: gm(k) / ((k + k0) * (k - k0)),
                    lambda k: -r - k * t)):
        def F(k):
            return g(k) / (1j * dth(k))

        def G(k):
            return (F(k + hh) - F(k - hh)) / (2.0 * hh) / (1j * dth(k))

        I += (-F(K) + G(K)
              - (G(K + hh) - G(K - hh)) / (2.0 * hh) / (1j * dth(K)))
    return -(1j / np.pi) * I / r


def _bound_channels(a_p, a_m):
    """(q, v+, v-, norm factor) per bound state; v is the boundary-condition
    null vector and norm = v+^2 + v-^2 + 2 v+ v- e^{-q s}."""
    channels = []
    for state in states_from_lengths(a_p, a_m, S):
        q = state.q
        if a_p == 0.0:
            v_p, v_m = 0.0, 1.0
        elif q * S < 300.0:
            v_p, v_m = 1.0, S * (q - 1.0 / a_p) * np.exp(q * S)
        else:
            v_p, v_m = 1.0, -a_m * np.exp(-q * S) / (S * (1.0 - q * a_m))
        norm = v_p * v_p + v_m * v_m + 2.0 * v_p * v_m * np.exp(-q * S)
        channels.append((q, v_p, v_m, norm))
    return channels


def scattered_wave(r_vec, t, k0_vec, occ, params):
    """Scattered part of the evolved wave (total minus the evolved
    plane wave) at one point; see evolve_wave for conventions."""
    if t < 0.0:
        raise InvalidInputError("time must be >= 0")
    a_p, a_m = _effective_lengths(occ, params)
    k0, cos0 = _geometry(k0_vec)
    r_p, r_m = _site_distances(r_vec)
    if a_p == 0.0 and a_m == 0.0:
        return 0.0 + 0.0j

    al_p, al_m = _alphas_incident(k0, cos0, a_p, a_m)
    phase = np.exp(-0.5j * k0 * k0 * t)
    out = 0.0 + 0.0j
    for sgn, al0, rr in ((+1, al_p, r_p), (-1, al_m, r_m)):
        # outgoing stationary pair: the scattering term -alpha0 e^{ik0 r}/r
        # plus half of it back, minus half the incoming-wave coefficient;
        # the incoming coefficient is albar(-k0) (propagation factors at
        # -k0, incident phases not conjugated)
        al_in = complex(_albar(np.array([-k0]), sgn, k0, cos0, a_p, a_m)[0])
        out += phase * (-0.5 * al0 * np.exp(1j * k0 * rr)
                        - 0.5 * al_in * np.exp(-1j * k0 * rr)) / rr
        if t == 0.0:
            out += _pv_static(rr, sgn, k0, cos0, a_p, a_m)
        else:
            out += _pv_time(rr, t, sgn, k0, cos0, a_p, a_m)

    phi = k0 * S * cos0 / 2.0
    for q, v_p, v_m, norm in _bound_channels(a_p, a_m):
        proj = v_p * np.exp(1j * phi) + v_m * np.exp(-1j * phi)
        radial = (v_p * np.exp(-q * r_p) / r_p
                  + v_m * np.exp(-q * r_m) / r_m)
        out += ((2.0 * q / (k0 * k0 + q * q)) * proj * radial / norm
                * np.exp(0.5j * q * q * t))
    return out


def evolve_wave(r_vec, t, k0_vec, occ, params):
    """Exact evolved wave at a point: plane wave, stationary s-wave pair,
    principal-value integral, and bound-state terms.

    Parameters
    ----------
    r_vec : 3-vector
        Position in units of s; must not coincide with a site.
    t : float
        Time, >= 0, units m s^2 / hbar.
    k0_vec : 3-vector
        Incident wavevector in units 1/s.
    occ : Occupation
    params : Params

    Returns
    -------
    complex
        At t = 0 this reproduces the incident plane wave (completeness);
        for r far outside both wavefronts it stays the plane wave.
    """
    k0_vec = np.asarray(k0_vec, dtype=float)
    r_vec = np.asarray(r_vec, dtype=float)
    k0, _ = _geometry(k0_vec)
    if t < 0.0:
        raise InvalidInputError("time must be >= 0")
    plane = np.exp(-0.5j * k0 * k0 * t) * np.exp(1j * k0_vec @ r_vec)
    return plane + scattered_wave(r_vec, t, k0_vec, occ, params)


def asymptotic_wave(r_vec, t, k0_vec, occ, params):
    """Step-gated envelope form: plane wave minus the outgoing s-waves
    switched on inside their wavefronts r± < k0 t."""
    a_p, a_m = _effective_lengths(occ, params)
    k0_vec = np.asarray(k0_vec, dtype=float)
    k0, cos0 = _geometry(k0_vec)
    r_p, r_m = _site_distances(r_vec)
    al_p, al_m = _alphas_incident(k0, cos0, a_p, a_m)
    out = np.exp(1j * k0_vec @ np.asarray(r_vec, dtype=float))
    for al0, rr in ((al_p, r_p), (al_m, r_m)):
        if k0 * t > rr:
            out -= al0 * np.exp(1j * k0 * rr) / rr
    return np.exp(-0.5j * k0 * k0 * t) * out


def ortho_residual(k_vec, kprime_vec, occ, params):
    """|LHS - RHS| of the alpha-bilinear orthogonality identity.

    LHS = ((k+k')/2)(a+* a+' + a-* a-')
          + ((e^{ik's} - e^{-iks})/(2is))(a+* a-' + a-* a+')
    RHS = (i/2)(a+' e^{-i k.s/2} - a+* e^{i k'.s/2}
          + a-' e^{i k.s/2} - a-* e^{-i k'.s/2})

    Holds for every wavevector pair including k = k'.
    """
    a_p, a_m = _effective_lengths(occ, params)
    k1, c1 = _geometry(k_vec)
    k2, c2 = _geometry(kprime_vec)
    a1p, a1m = _alphas_incident(k1, c1, a_p, a_m)
    a2p, a2m = _alphas_incident(k2, c2, a_p, a_m)
    phi1, phi2 = k1 * S * c1 / 2.0, k2 * S * c2 / 2.0
    lhs = (0.5 * (k1 + k2) * (np.conj(a1p) * a2p + np.conj(a1m) * a2m)
           + (np.exp(1j * k2 * S) - np.exp(-1j * k1 * S)) / (2j * S)
           * (np.conj(a1p) * a2m + np.conj(a1m) * a2p))
    rhs = 0.5j * (a2p * np.exp(-1j * phi1) - np.conj(a1p) * np.exp(1j * phi2)
                  + a2m * np.exp(1j * phi1) - np.conj(a1m) * np.exp(-1j * phi2))
    return float(abs(lhs - rhs))


def envelope_norm_slope(k0_vec, occ, params):
    """Closed-form growth rate of the envelope's scattered norm:
    4 pi k0 (|a+|^2 + |a-|^2 + 2 sinc(k0 s) Re(a+ conj a-))."""
    a_p, a_m = _effective_lengths(occ, params)
    k0, cos0 = _geometry(k0_vec)
    al_p, al_m = _alphas_incident(k0, cos0, a_p, a_m)
    u = k0 * S
    sinc = np.sin(u) / u if abs(u) >= 1e-4 else 1.0 - u * u / 6.0
    return float(4.0 * np.pi * k0 * (abs(al_p) ** 2 + abs(al_m) ** 2
                 + 2.0 * sinc * np.real(al_p * np.conj(al_m))))


def scat_norm_growth(t_grid, k0_vec, occ, params):
    """Integrated scattered norm of the envelope at each t.

    Self terms are exact ball integrals 4 pi |alpha|^2 k0 t; the cross term
    is quadratured over the exact bipolar rectangle
    (u, v) = (r+ + r-, r+ - r-), where the overlap of the two wavefront
    balls is s <= u <= 2 k0 t - |v|, |v| <= s. Linear in t past the
    transient, slope equal to envelope_norm_slope.
    """
    a_p, a_m = _effective_lengths(occ, params)
    k0, cos0 = _geometry(k0_vec)
    al_p, al_m = _alphas_incident(k0, cos0, a_p, a_m)
    cross_coeff = al_p * np.conj(al_m)
    xg, wg = gauss_legendre(max(16, int(2 * k0 * S) + 8))
    v_nodes, v_wts = S * xg, S * wg  # v over [-s, s]
    out = []
    for t in t_grid:
        R = k0 * t
        total = 4.0 * np.pi * R * (abs(al_p) ** 2 + abs(al_m) ** 2)
        # d^3r = (pi / s) r+ r- du dv in (u, v); the cross integrand
        # 2 Re{a+ a-* e^{i k0 v}} / (r+ r-) leaves a flat u integral
        u_len = np.maximum(0.0, 2.0 * R - np.abs(v_nodes) - S)
        cross = np.sum(v_wts * u_len
                       * 2.0 * np.real(cross_coeff * np.exp(1j * k0 * v_nodes)))
        total += (np.pi / S) * cross
        out.append(float(total))
    return out


def saddle_contribution(r, t, k0, occ, params, incidence_cos=0.0):
    """Stationary-phase estimate of the PV term at distance r from each
    site: sum over sites of
    -(i/pi) sqrt(2 pi/t) e^{-i pi/4} e^{i r^2/2t} k_sp albar(k_sp)
    / ((k_sp^2 - k0^2) r),  k_sp = r/t.

    Scales as t^{-3/2} at fixed k_sp; refuses near the front where the
    denominator is singular.
    """
    if t <= 0.0:
        raise InvalidInputError("saddle_contribution requires t > 0")
    a_p, a_m = _effective_lengths(occ, params)
    k_sp = r / t
    if abs(k_sp - k0) < 1e-3 * k0:
        raise FrontProximityError(
            f"k_sp = {k_sp} within 1e-3 of k0 = {k0}: the stationary-phase "
            "expression is singular at the front")
    if a_p == 0.0 and a_m == 0.0:
        return 0.0 + 0.0j
    out = 0.0 + 0.0j
    pref = (-(1j / np.pi) * np.sqrt(2.0 * np.pi / t)
            * np.exp(-0.25j * np.pi) * np.exp(0.5j * r * r / t))
    for sgn in (+1, -1):
        alb = complex(
            _albar(np.array([k_sp]), sgn, k0, incidence_cos, a_p, a_m)[0])
        out += pref * k_sp * alb / ((k_sp ** 2 - k0 ** 2) * r)
    return out
