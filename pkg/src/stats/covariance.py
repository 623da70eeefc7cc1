"""Sample covariance, its signal-subspace eigendecomposition, and the MODE
signal weight G = diag((lambda_i - sigma2)^2 / lambda_i)."""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from src.config import HERMITIAN_TOL, ORTHONORMAL_TOL, PSD_TOL
from src.errors import DimensionError, NumericalError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SampleCovariance:
    """Hermitian PSD m x m covariance. ``n_snapshots`` is None for an exact
    (model) covariance."""
    matrix: np.ndarray
    n_snapshots: Optional[int] = None

    def __post_init__(self):
        R = np.asarray(self.matrix, dtype=complex)
        if R.ndim != 2 or R.shape[0] != R.shape[1]:
            raise DimensionError(f"covariance must be square, got shape {R.shape}")
        scale = max(1.0, np.abs(R).max(initial=0.0))
        if np.abs(R - R.conj().T).max(initial=0.0) > HERMITIAN_TOL * scale:
            raise ValidationError("covariance is not Hermitian")
        w = linalg.eigvalsh(R)
        if w[0] < -PSD_TOL * max(w[-1], 0.0):
            raise ValidationError(f"covariance is not PSD (smallest eigenvalue {w[0]:.3g})")
        R.setflags(write=False)
        object.__setattr__(self, "matrix", R)

    @property
    def m(self):
        return self.matrix.shape[0]

    @property
    def is_exact(self):
        return self.n_snapshots is None


def as_covariance(cov):
    return cov if isinstance(cov, SampleCovariance) else SampleCovariance(cov)


@dataclass(frozen=True, eq=False)
class SubspaceDecomposition:
    u_signal: np.ndarray        # m x r principal eigenvectors
    lambdas: np.ndarray         # r largest eigenvalues, descending
    sigma2: float               # mean of the m - r smallest eigenvalues
    all_eigenvalues: Optional[np.ndarray] = None

    def __post_init__(self):
        U = np.asarray(self.u_signal, dtype=complex)
        lam = np.atleast_1d(np.asarray(self.lambdas, dtype=float))
        if U.ndim != 2 or U.shape[1] != lam.size or U.shape[1] >= U.shape[0]:
            raise DimensionError(f"u_signal {U.shape} does not match {lam.size} eigenvalues")
        if np.linalg.norm(U.conj().T @ U - np.eye(lam.size)) > ORTHONORMAL_TOL:
            raise ValidationError("u_signal columns are not orthonormal")
        if np.any(np.diff(lam) > 0):
            raise ValidationError("lambdas must be descending")
        if self.sigma2 < 0:
            raise ValidationError("sigma2 must be nonnegative")
        object.__setattr__(self, "u_signal", U)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "sigma2", float(self.sigma2))

    @property
    def m(self):
        return self.u_signal.shape[0]

    @property
    def r(self):
        return self.u_signal.shape[1]

    @property
    def well_posed(self):
        return bool(self.lambdas[-1] > self.sigma2)


@dataclass(frozen=True, eq=False)
class SignalWeight:
    g: np.ndarray

    def __post_init__(self):
        g = np.atleast_1d(np.asarray(self.g, dtype=float))
        if g.ndim != 1 or not np.all(np.isfinite(g)) or np.any(g < 0):
            raise ValidationError(f"signal weights must be finite and nonnegative, got {g}")
        object.__setattr__(self, "g", g)

    @property
    def matrix(self):
        return np.diag(self.g)


def sample_covariance(snapshots):
    """(1/T) sum_t y(t) y(t)*, symmetrized. Accepts a SnapshotSet or an m x T array."""
    Y = np.asarray(getattr(snapshots, "snapshots", snapshots), dtype=complex)
    if Y.ndim != 2 or Y.shape[1] == 0:
        raise ValidationError("need at least one snapshot column")
    R = Y @ Y.conj().T / Y.shape[1]
    return SampleCovariance(0.5 * (R + R.conj().T), n_snapshots=Y.shape[1])


def _fix_phase(U):
    # largest-magnitude entry of each column made real positive
    idx = np.argmax(np.abs(U), axis=0)
    pivots = U[idx, np.arange(U.shape[1])]
    return U * (np.abs(pivots) / pivots)


def subspace_decomposition(cov, r):
    cov = as_covariance(cov)
    m = cov.m
    if not 0 < r < m:
        raise DimensionError(f"need 0 < r < m (r={r}, m={m})")
    try:
        w, V = linalg.eigh(cov.matrix)
    except linalg.LinAlgError as e:
        raise NumericalError(f"eigendecomposition failed: {e}") from e
    w, V = w[::-1], V[:, ::-1]
    sigma2 = max(float(np.mean(w[r:])), 0.0)
    decomp = SubspaceDecomposition(
        u_signal=_fix_phase(V[:, :r]),
        lambdas=w[:r],
        sigma2=sigma2,
        all_eigenvalues=w,
    )
    if not decomp.well_posed:
        logger.warning("signal eigenvalue %.6g does not exceed noise estimate %.6g",
                       decomp.lambdas[-1], sigma2)
    return decomp


def signal_weight(decomp):
    lam = decomp.lambdas
    if np.any(lam <= 0):
        raise ValidationError(f"signal eigenvalues must be positive, got {lam}")
    return SignalWeight((lam - decomp.sigma2) ** 2 / lam)
