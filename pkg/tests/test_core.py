"""Parameter containers, rate prefactor, and density-matrix plumbing."""

import numpy as np
import pytest

from twositebath.core import (SQRT_PI, DensityMatrix, InvalidInputError,
                              Occupation, Params, PhysicalInputs, fock_basis,
                              g1, gamma_scale)


def test_params_validation():
    Params(a_over_lambda=0.3, s_over_lambda=1.0)
    Params(a_over_lambda=-2.0, s_over_lambda=0.0)  # s = 0 ok at this level
    with pytest.raises(InvalidInputError):
        Params(a_over_lambda=np.nan, s_over_lambda=1.0)
    with pytest.raises(InvalidInputError):
        Params(a_over_lambda=0.1, s_over_lambda=-1.0)
    with pytest.raises(InvalidInputError):
        Params(a_over_lambda=0.1, s_over_lambda=1.0, L_over_lambda=0.0)


def test_params_short_mfp_warns():
    with pytest.warns(UserWarning):
        Params(a_over_lambda=0.1, s_over_lambda=1.0, L_over_lambda=5.0)


def test_require_separated_rejects_contact():
    p = Params(a_over_lambda=0.1, s_over_lambda=0.0)
    with pytest.raises(InvalidInputError):
        p.require_separated("test")


def test_gamma_scale_examples():
    # a = 0 switches the rate off entirely
    phys = PhysicalInputs(mass=1.0, lam=1.0, n_buffer=1.0, a=0.0)
    assert gamma_scale(phys) == 0.0
    # quadratic in a
    p1 = PhysicalInputs(mass=1.0, lam=1.0, n_buffer=1.0, a=1.0, hbar=1.0)
    p2 = PhysicalInputs(mass=1.0, lam=1.0, n_buffer=1.0, a=2.0, hbar=1.0)
    assert gamma_scale(p2) == pytest.approx(4.0 * gamma_scale(p1), rel=1e-15)
    # all-ones normalization: 2 sqrt(pi)
    assert gamma_scale(p1) == pytest.approx(2.0 * SQRT_PI, rel=1e-15)
    assert gamma_scale(p1) == pytest.approx(3.5449077018110318, rel=1e-12)


def test_physical_inputs_validation():
    with pytest.raises(InvalidInputError):
        PhysicalInputs(mass=0.0, lam=1.0, n_buffer=1.0, a=1.0)
    with pytest.raises(InvalidInputError):
        PhysicalInputs(mass=1.0, lam=-1.0, n_buffer=1.0, a=1.0)
    phys = PhysicalInputs(mass=1.0, lam=1.0, n_buffer=2.0, a=1.0,
                          sigma_buffer=4.0)
    assert phys.mean_free_path == pytest.approx(1.0 / 8.0)


def test_g1_values():
    assert g1(0.0) == 1.0
    assert g1(1.0) == pytest.approx(0.6065306597126334, rel=1e-12)
    assert g1(10.0) == pytest.approx(1.928749847963918e-22, rel=1e-10)
    with pytest.raises(InvalidInputError):
        g1(-0.5)


def test_occupation_roundtrip():
    occ = Occupation(3, 1)
    assert occ.total == 4
    assert occ.relative == 2
    # (N, n) -> (n+, n-) inversion
    n_p = (occ.total + occ.relative) // 2
    n_m = (occ.total - occ.relative) // 2
    assert (n_p, n_m) == (occ.n_plus, occ.n_minus)
    ap, am = occ.effective_lengths(0.5)
    assert (ap, am) == (1.5, 0.5)
    with pytest.raises(InvalidInputError):
        Occupation(-1, 0)


def test_fock_basis_order_and_size():
    basis = fock_basis(max_total=3)
    # sum_{N=0}^{3} (N+1) states, ordered by (N, n+)
    assert len(basis) == 10
    assert basis[0] == Occupation(0, 0)
    totals = [b.total for b in basis]
    assert totals == sorted(totals)


def test_density_matrix_validation():
    basis = fock_basis(max_total=2)
    dim = len(basis)
    mat = np.zeros((dim, dim), dtype=complex)
    mat[0, 0] = 1.0
    rho = DensityMatrix(mat, max_total=2)
    assert rho.trace() == pytest.approx(1.0)

    bad = mat.copy()
    bad[0, 1] = 0.5  # not Hermitian
    with pytest.raises(InvalidInputError):
        DensityMatrix(bad, max_total=2)

    bad = mat.copy() * 0.5  # trace 0.5
    with pytest.raises(InvalidInputError):
        DensityMatrix(bad, max_total=2)

    bad = np.zeros((dim, dim), dtype=complex)
    bad[0, 0], bad[1, 1] = 1.5, -0.5  # negative eigenvalue
    with pytest.raises(InvalidInputError):
        DensityMatrix(bad, max_total=2)


def test_density_matrix_from_pure():
    rho = DensityMatrix.from_pure({(1, 0): 1.0, (0, 1): 1.0}, max_total=2)
    i = rho.index((1, 0))
    j = rho.index((0, 1))
    assert rho.matrix[i, i] == pytest.approx(0.5)
    assert rho.matrix[i, j] == pytest.approx(0.5)
    assert rho.entry(Occupation(1, 0), Occupation(0, 1)) == pytest.approx(0.5)
