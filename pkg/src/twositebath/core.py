"""Dimensionless parameters, occupation bookkeeping, Fock indexing, rate scale.

Conventions used across the package: lengths are measured in units of the
thermal coherence length lambda unless a module says otherwise, and every
rate is reported in units of the scattering rate Gamma returned by
gamma_scale. Physical (SI) quantities enter only through PhysicalInputs.
"""

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

SQRT_PI = float(np.sqrt(np.pi))

HBAR_SI = 1.054571817e-34  # J s


class InvalidInputError(ValueError):
    """Caller-supplied value outside the validity domain."""


class NumericsError(RuntimeError):
    """A quadrature or root-finding step failed to converge."""


class NearSingularError(NumericsError):
    """|Lambda(k)| fell below threshold on the real axis.

    Reported, never regularized: a real-axis zero of the denominator is
    outside the model's validity and silently continuing would fabricate
    physics.
    """


class FrontProximityError(InvalidInputError):
    """Stationary-phase evaluation requested too close to the wavefront."""


@dataclass(frozen=True)
class Params:
    """Dimensionless model parameters.

    Attributes
    ----------
    a_over_lambda : float
        s-wave scattering length a in units of lambda (any sign).
    s_over_lambda : float
        Site separation s in units of lambda, >= 0.
    L_over_lambda : float, optional
        Buffer-gas mean free path L in units of lambda; None means the
        ideal-gas limit L -> infinity.
    """

    a_over_lambda: float
    s_over_lambda: float
    L_over_lambda: Optional[float] = None

    def __post_init__(self):
        if not np.isfinite(self.a_over_lambda):
            raise InvalidInputError("a_over_lambda must be finite")
        if not (self.s_over_lambda >= 0.0):
            raise InvalidInputError("s_over_lambda must be >= 0")
        if self.L_over_lambda is not None:
            if not (self.L_over_lambda > 0.0):
                raise InvalidInputError("L_over_lambda must be > 0")
            if self.L_over_lambda < 10.0:
                # model assumes lambda << L; warn, do not reject
                warnings.warn(
                    "L_over_lambda < 10: outside the regime the "
                    "Lorentzian-kernel model was derived for",
                    stacklevel=2)

    def require_separated(self, what="this operation"):
        """Reject s = 0 where the point-scatterer pair is ill-defined."""
        if self.s_over_lambda == 0.0:
            raise InvalidInputError(
                f"{what} requires s_over_lambda > 0: the contact "
                "pseudo-potential pair is invalid at strict s = 0")


@dataclass(frozen=True)
class PhysicalInputs:
    """SI inputs that set the overall rate scale.

    L = 1/(n_buffer * sigma_buffer) is derived when sigma_buffer is given.
    """

    mass: float            # buffer particle mass, kg
    lam: float             # thermal coherence length lambda, m
    n_buffer: float        # buffer number density, 1/m^3
    a: float               # s-wave scattering length, m (any sign)
    sigma_buffer: Optional[float] = None  # buffer-buffer cross section, m^2
    hbar: float = HBAR_SI

    def __post_init__(self):
        for name in ("mass", "lam", "n_buffer", "hbar"):
            if not (getattr(self, name) > 0.0):
                raise InvalidInputError(f"{name} must be > 0")
        if self.sigma_buffer is not None and not (self.sigma_buffer > 0.0):
            raise InvalidInputError("sigma_buffer must be > 0")

    @property
    def mean_free_path(self):
        if self.sigma_buffer is None:
            raise InvalidInputError(
                "mean_free_path needs sigma_buffer")
        return 1.0 / (self.n_buffer * self.sigma_buffer)


def gamma_scale(phys):
    """Scattering rate scale Gamma = 2 sqrt(pi) n_B hbar a^2 / (m lambda).

    Parameters
    ----------
    phys : PhysicalInputs

    Returns
    -------
    float
        Gamma in 1/s; zero iff a = 0.
    """
    return (2.0 * SQRT_PI * phys.n_buffer * phys.hbar * phys.a ** 2
            / (phys.mass * phys.lam))


def g1(x):
    """First-order spatial coherence of the thermal gas, exp(-x^2/2).

    Parameters
    ----------
    x : float
        Point separation in units of lambda, >= 0.
    """
    if x < 0.0:
        raise InvalidInputError("separation must be >= 0")
    return float(np.exp(-0.5 * x * x))


@dataclass(frozen=True)
class Occupation:
    """Boson numbers at the two sites."""

    n_plus: int
    n_minus: int

    def __post_init__(self):
        for n in (self.n_plus, self.n_minus):
            if not isinstance(n, (int, np.integer)) or n < 0:
                raise InvalidInputError(
                    "occupations must be non-negative integers")

    @property
    def total(self):
        """N = n+ + n-."""
        return self.n_plus + self.n_minus

    @property
    def relative(self):
        """n = n+ - n-; |n| <= N and n == N (mod 2) by construction."""
        return self.n_plus - self.n_minus

    def effective_lengths(self, a_over_lambda):
        """Per-site effective scattering lengths a± = a * n±."""
        return (a_over_lambda * self.n_plus, a_over_lambda * self.n_minus)


def fock_basis(max_total=8):
    """All occupations with n+ + n- <= max_total, ordered by (N, n+).

    The ordering is part of the DensityMatrix entry layout; keep it stable.
    """
    basis = []
    for total in range(max_total + 1):
        for n_plus in range(total + 1):
            basis.append(Occupation(n_plus, total - n_plus))
    return basis


class DensityMatrix:
    """Dense density matrix over the two-site Fock basis up to max_total.

    Entries are indexed by occupation pairs through fock_basis ordering.
    Construction enforces Hermiticity, unit trace and positive
    semidefiniteness to 1e-12 (evolution maps preserve all three, so the
    checks only need to run here).
    """

    TOL = 1e-12

    def __init__(self, matrix, max_total=8):
        basis = fock_basis(max_total)
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (len(basis), len(basis)):
            raise InvalidInputError(
                f"matrix shape {matrix.shape} does not match basis size "
                f"{len(basis)} for max_total={max_total}")
        if np.max(np.abs(matrix - matrix.conj().T)) > self.TOL:
            raise InvalidInputError("density matrix must be Hermitian")
        if abs(np.trace(matrix).real - 1.0) > self.TOL:
            raise InvalidInputError("density matrix must have trace 1")
        if np.linalg.eigvalsh(matrix).min() < -self.TOL:
            raise InvalidInputError(
                "density matrix must be positive semidefinite")
        self.max_total = max_total
        self.basis = basis
        self._index = {(o.n_plus, o.n_minus): i for i, o in enumerate(basis)}
        self.matrix = matrix

    @classmethod
    def from_pure(cls, amplitudes, max_total=8):
        """Pure-state density matrix from {(n+, n-): amplitude}.

        Amplitudes are normalized here; unlisted basis states get zero.
        """
        basis = fock_basis(max_total)
        index = {(o.n_plus, o.n_minus): i for i, o in enumerate(basis)}
        vec = np.zeros(len(basis), dtype=complex)
        for occ, amp in amplitudes.items():
            if occ not in index:
                raise InvalidInputError(
                    f"occupation {occ} exceeds max_total={max_total}")
            vec[index[occ]] = amp
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            raise InvalidInputError("pure state needs a nonzero amplitude")
        vec /= norm
        return cls(np.outer(vec, vec.conj()), max_total=max_total)

    def index(self, occ):
        """Row/column index of an Occupation (or (n+, n-) tuple)."""
        key = (occ.n_plus, occ.n_minus) if isinstance(occ, Occupation) \
            else tuple(occ)
        return self._index[key]

    def entry(self, occ, occ_prime):
        return self.matrix[self.index(occ), self.index(occ_prime)]

    def trace(self):
        return float(np.trace(self.matrix).real)
