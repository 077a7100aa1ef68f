"""Finite mean-free-path correction to the relative-coordinate rate factor.

The ideal-gas factor R(k0 s) assumes plane-wave bath states. A finite mean
free path L broadens each bath momentum into a Lorentzian line of width 1/L,
which suppresses the two-site interference term once s is comparable to L.
Everything here is in units of the thermal wavelength lambda; the suppressed
factor tends to R(s) as L -> infinity and to exp(-s/L)/(2 s^2) for s >> 1.
"""

import numpy as np

from .born_markov import rate_R
from .core import InvalidInputError
from .quadrature import growing_edges, panel_nodes, uniform_edges

K_MAX = 6.5             # thermal cutoff; e^{-k^2} below 4e-19 beyond


def delta_lorentzian(u, L):
    """Lorentzian line shape of half-width 1/L, unit area over the line."""
    if L <= 0.0:
        raise InvalidInputError("mean free path must be positive")
    g = 1.0 / L
    return (g / np.pi) / (np.asarray(u, dtype=float) ** 2 + g * g)


def delta_lorentzian_norm(L, cutoff=None):
    """Quadrature norm of delta_lorentzian over [-cutoff, cutoff] plus the
    analytic tail 1 - (2/pi) arctan(cutoff L); equals 1 up to quadrature
    error."""
    if cutoff is None:
        cutoff = 1000.0 / L
    edges = growing_edges(0.0, cutoff, min(0.2, 1.0 / (3.0 * L)), 5.0)
    nodes, wts = panel_nodes(edges, 12)
    body = 2.0 * float(np.sum(wts * delta_lorentzian(nodes, L)))
    tail = 1.0 - (2.0 / np.pi) * np.arctan(cutoff * L)
    return body + tail


def _z_tilde(kp, s, L):
    """Line-broadened interference transform
    Z(k') = int_{-k'}^{inf} du (k'+u)/(2k'+u) e^{ius} delta_L(u).

    Direct panels resolve both the Lorentzian core (width 1/L) and the
    e^{ius} oscillation; the far wings go by two-term integration by parts
    in the phase, with analytic derivatives of the prefactor.
    """
    g = 1.0 / L

    def W(u):
        return (kp + u) / (2.0 * kp + u)

    def Wp(u):
        return kp / (2.0 * kp + u) ** 2

    def f(u):
        return W(u) * delta_lorentzian(u, L)

    def fp(u):
        u = np.asarray(u, dtype=float)
        dlor = (g / np.pi) * (-2.0 * u) / (u * u + g * g) ** 2
        return Wp(u) * delta_lorentzian(u, L) + W(u) * dlor

    w_max = min(0.2, np.pi / (4.0 * s))
    w0 = min(1.0 / (3.0 * L), w_max)
    U = max(60.0 / L, 30.0 / s)
    V = min(kp, U)

    edges_up = growing_edges(0.0, U, w0, w_max)
    edges_dn = -growing_edges(0.0, V, w0, w_max)[::-1]
    I = 0.0 + 0.0j
    for edges in (edges_dn, edges_up):
        nodes, wts = panel_nodes(edges, 12)
        I += np.sum(wts * f(nodes) * np.exp(1j * nodes * s))

    # upper wing [U, inf): boundary terms of e^{ius}/(is) integration by parts
    I += (-f(U) * np.exp(1j * U * s) / (1j * s)
          + fp(U) * np.exp(1j * U * s) / (1j * s) ** 2)
    # lower wing [-kp, -V] if the cutoff V stopped short of the endpoint;
    # W(-kp) = 0 so only the fp endpoint survives there
    if V < kp:
        I += ((f(-V) * np.exp(-1j * V * s)
               - f(-kp) * np.exp(-1j * kp * s)) / (1j * s)
              - (fp(-V) * np.exp(-1j * V * s)
                 - fp(-kp) * np.exp(-1j * kp * s)) / (1j * s) ** 2)
    return complex(I)


def inner_kernel(kp, s, L):
    """Re Z(k'); tends to inner_kernel_limit once k' L >> 1 and k' s >> 1."""
    if kp <= 0.0:
        raise InvalidInputError("wavenumber must be positive")
    if s <= 0.0:
        raise InvalidInputError("separation must be positive")
    return _z_tilde(kp, s, L).real


def inner_kernel_limit(s, L):
    """Large-k' limit of the kernel: the Lorentzian Fourier factor
    exp(-s/L) times the prefactor 1/2."""
    return 0.5 * np.exp(-s / L)


def rate_R_tilde_lengths(s, L):
    """Line-broadened interference factor at separation s (lambda units)
    and mean free path L:

    R~ = (2/s^2) int_0^K dk k e^{-k^2} Re[(1 - e^{2iks}) Z(k)].

    For s > 50 the rapidly oscillating e^{2iks} piece is dropped; its
    contribution is bounded by |Z(0)| / (4 s^2) relative to the retained
    term, far below the tolerance there.
    """
    if s <= 0.0:
        raise InvalidInputError("separation must be positive")
    if L <= 0.0:
        raise InvalidInputError("mean free path must be positive")
    osc_direct = s <= 50.0
    w_out = min(0.05, np.pi / (8.0 * s)) if osc_direct else 0.05
    nodes, wts = panel_nodes(uniform_edges(1e-9, K_MAX, w_out), 12)
    total = 0.0
    for kp, w in zip(nodes, wts):
        Z = _z_tilde(kp, s, L)
        if osc_direct:
            val = ((1.0 - np.exp(2j * kp * s)) * Z).real
        else:
            val = Z.real
        total += w * kp * np.exp(-kp * kp) * val
    return (2.0 / s ** 2) * total


def rate_R_tilde(params):
    """rate_R_tilde_lengths at the configured separation and mean free
    path; requires L_over_lambda to be set."""
    if params.L_over_lambda is None:
        raise InvalidInputError("L_over_lambda is required for "
                                "mean-free-path corrections")
    return rate_R_tilde_lengths(params.s_over_lambda, params.L_over_lambda)


def rate_R_reference(s):
    """Ideal-gas factor the broadened one must recover as L -> infinity."""
    return rate_R(s)


def suppressed_reference(s, L):
    """Opaque-medium form (1/(2 s^2)) exp(-s/L), the s >> lambda shape."""
    return np.exp(-s / L) / (2.0 * s ** 2)
