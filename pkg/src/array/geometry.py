"""Uniform linear array geometry: angle/coefficient value types, steering
matrices, banded Toeplitz annihilators and the two orthogonal projectors.

Angles are electrical angles phi in (-pi, pi]; sensor k responds with
exp(j*k*phi). Steering matrices and annihilators are returned as plain
complex ndarrays (m x r and (m-q) x m).
"""
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from src.config import CONDITION_LIMIT
from src.errors import DimensionError, SingularityError, ValidationError


def wrap_angle(x):
    """Principal value of x in (-pi, pi]; values already in range pass through unchanged."""
    x = np.asarray(x, dtype=float)
    wrapped = np.pi - np.mod(np.pi - x, 2 * np.pi)
    return np.where((x > -np.pi) & (x <= np.pi), x, wrapped)


@dataclass(frozen=True, eq=False)
class AngleSet:
    """Ascending DOA angles in radians.

    User-supplied sets must be strictly ascending. Sets recovered from
    polynomial roots go through ``from_roots`` and may hold ties, since a root
    pair (z, 1/z*) projects to a single argument.
    """
    angles: np.ndarray
    distinct: bool = field(default=True, repr=False)

    def __post_init__(self):
        values = np.atleast_1d(np.asarray(self.angles, dtype=float))
        if values.ndim != 1 or values.size == 0:
            raise ValidationError("an AngleSet needs at least one angle")
        if not np.all(np.isfinite(values)):
            raise ValidationError(f"angles must be finite, got {values}")
        if np.any(values <= -np.pi) or np.any(values > np.pi):
            raise ValidationError(f"angles must lie in (-pi, pi], got {values}")
        steps = np.diff(values)
        if self.distinct and np.any(steps <= 0):
            raise ValidationError(f"angles must be strictly ascending, got {values}")
        if np.any(steps < 0):
            raise ValidationError(f"angles must be ascending, got {values}")
        values.setflags(write=False)
        object.__setattr__(self, "angles", values)

    @classmethod
    def from_unsorted(cls, values):
        return cls(np.sort(wrap_angle(values)))

    @classmethod
    def from_roots(cls, values):
        return cls(np.sort(wrap_angle(values)), distinct=False)

    def __len__(self):
        return self.angles.size

    def __iter__(self):
        return iter(self.angles.tolist())

    def __getitem__(self, idx):
        return self.angles[idx]


@dataclass(frozen=True, eq=False)
class CoefVector:
    """Coefficients c_0..c_q of c_0 + c_1 z + ... + c_q z^q, with c_0 != 0."""
    coefs: np.ndarray

    def __post_init__(self):
        values = np.atleast_1d(np.asarray(self.coefs, dtype=complex))
        if values.ndim != 1 or values.size < 2:
            raise ValidationError("a CoefVector needs at least two coefficients")
        if not np.all(np.isfinite(values)):
            raise ValidationError("coefficients must be finite")
        if values[0] == 0:
            raise ValidationError("c_0 must be nonzero")
        values.setflags(write=False)
        object.__setattr__(self, "coefs", values)

    @property
    def degree(self):
        return self.coefs.size - 1

    def scaled(self, alpha):
        return CoefVector(alpha * self.coefs)

    def __len__(self):
        return self.coefs.size


def as_angle_set(angles):
    return angles if isinstance(angles, AngleSet) else AngleSet(angles)


def as_coef_vector(coefs):
    return coefs if isinstance(coefs, CoefVector) else CoefVector(coefs)


def steering_matrix(angles, m):
    """m x r Vandermonde matrix with entry (k, i) = exp(j k phi_i)."""
    angles = as_angle_set(angles)
    if m <= len(angles):
        raise DimensionError(f"need more sensors than sources (m={m}, r={len(angles)})")
    return np.exp(1j * np.outer(np.arange(m), angles.angles))


def toeplitz_annihilator(coefs, m):
    """(m-q) x m banded Toeplitz matrix with row i holding c_0..c_q from column i."""
    coefs = as_coef_vector(coefs)
    q = coefs.degree
    if m <= q:
        raise DimensionError(f"need m > q for an annihilator (m={m}, q={q})")
    first_col = np.zeros(m - q, dtype=complex)
    first_col[0] = coefs.coefs[0]
    first_row = np.zeros(m, dtype=complex)
    first_row[:q + 1] = coefs.coefs
    return linalg.toeplitz(first_col, first_row)


def _check_gram_condition(X, what):
    # cond(X X*) = cond(X)^2
    cond = np.linalg.cond(X)
    if not np.isfinite(cond) or cond ** 2 > CONDITION_LIMIT:
        raise SingularityError(f"{what} is numerically singular (condition {cond ** 2:.3g})")
    return cond ** 2


def _hermitize(M):
    return 0.5 * (M + M.conj().T)


def projector_from_annihilator(T):
    """Pi_T = T*(TT*)^-1 T, the projector onto the row space of T.

    Formed from an orthonormal basis of range(T*) so the error grows with
    cond(T) rather than cond(TT*).
    """
    T = np.atleast_2d(np.asarray(T, dtype=complex))
    n, m = T.shape
    if n > m:
        raise DimensionError(f"annihilator must be wide, got {n}x{m}")
    _check_gram_condition(T, "TT*")
    Q, _ = linalg.qr(T.conj().T, mode="economic")
    return _hermitize(Q @ Q.conj().T)


def projector_from_steering(A):
    """Pi_A^perp = I - A(A*A)^-1 A*, the projector onto R(A)^perp."""
    A = np.asarray(A, dtype=complex)
    if A.ndim == 1:
        A = A[:, None]
    m, r = A.shape
    if r > m:
        raise DimensionError(f"steering matrix must be tall, got {m}x{r}")
    _check_gram_condition(A, "A*A")
    Q, _ = linalg.qr(A, mode="economic")
    return _hermitize(np.eye(m) - Q @ Q.conj().T)
