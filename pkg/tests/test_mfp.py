"""Finite mean-free-path suppression of the interference factor."""

import numpy as np
import pytest

from twositebath.core import InvalidInputError, Params
from twositebath.mfp import (delta_lorentzian, delta_lorentzian_norm,
                             inner_kernel, inner_kernel_limit, rate_R_tilde,
                             rate_R_tilde_lengths, suppressed_reference)
from twositebath.born_markov import rate_R


def test_lorentzian_normalization():
    for L in (10.0, 300.0, 1e4):
        assert abs(delta_lorentzian_norm(L) - 1.0) < 1e-8
    # peak value L/pi at u = 0
    assert delta_lorentzian(0.0, 10.0) == pytest.approx(10.0 / np.pi,
                                                        rel=1e-14)


def test_inner_kernel_limit_at_large_kL():
    # k'L = 1e3: the kernel sits on its asymptote to better than 1%
    L, s = 50.0, 5.0
    kp = 1000.0 / L
    val = inner_kernel(kp, s, L)
    lim = inner_kernel_limit(s, L)
    assert abs(val - lim) / lim < 1e-2
    # k'L = 10: the deviation is measurable (reported, not hidden)
    kp_small = 10.0 / L
    val_small = inner_kernel(kp_small, s, L)
    assert abs(val_small - lim) / lim > 1e-2


def test_delta_limit_recovers_ideal_factor():
    # enormous mean free path: line width -> 0 and R~ -> R
    rt = rate_R_tilde_lengths(2.0, 1e4)
    assert abs(rt - rate_R(2.0)) / rate_R(2.0) < 1e-3


def test_opaque_separation_form():
    # s = 10 L, lambda = 1e-3 L: exponential shadowing of the 1/(2 s^2) tail
    rt = rate_R_tilde_lengths(1e4, 1e3)
    ref = suppressed_reference(1e4, 1e3)
    assert abs(rt - ref) / ref < 5e-2


def test_monotone_in_mean_free_path():
    s = 5.0
    vals = [rate_R_tilde_lengths(s, float(L))
            for L in np.geomspace(10.0, 1e5, 7)]
    assert all(b >= a * (1.0 - 1e-9) for a, b in zip(vals, vals[1:]))
    # and bounded by the ideal factor from below
    assert vals[-1] <= rate_R(s) * (1.0 + 1e-3)


def test_params_interface():
    p = Params(a_over_lambda=0.1, s_over_lambda=2.0, L_over_lambda=100.0)
    assert rate_R_tilde(p) == pytest.approx(rate_R_tilde_lengths(2.0, 100.0),
                                            rel=1e-14)
    with pytest.raises(InvalidInputError):
        rate_R_tilde(Params(a_over_lambda=0.1, s_over_lambda=2.0))


def test_input_validation():
    with pytest.raises(InvalidInputError):
        rate_R_tilde_lengths(0.0, 100.0)
    with pytest.raises(InvalidInputError):
        rate_R_tilde_lengths(2.0, -1.0)
    with pytest.raises(InvalidInputError):
        inner_kernel(-1.0, 2.0, 100.0)
