"""Subspace-fitting criteria for a ULA.

    V_ML(phi)  = tr{ Pi_A^perp R }
    V_ML(c)    = tr{ (TT*)^-1 T R T* }
    V_MODE(c)  = tr{ (TT*)^-1 T U G U* T* }
    V_PUMA(c)  = e* W e,   e = vec(T U),   W = G kron (TT*)^-1

V_PUMA is evaluated through the explicit Kronecker weight so that it is an
independent computation of the same number as V_MODE.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from src.array.geometry import (as_angle_set, as_coef_vector, projector_from_annihilator,
                                projector_from_steering, steering_matrix,
                                toeplitz_annihilator)
from src.config import CONDITION_LIMIT
from src.criteria.vectorize import kron, vec
from src.errors import DimensionError, SingularityError
from src.stats.covariance import as_covariance


@dataclass(frozen=True)
class CriterionValue:
    value: float
    gram_condition: Optional[float] = None   # condition number of TT*, when formed

    def __float__(self):
        return self.value


def annihilator_gram(T):
    """Lower Cholesky factor L of TT*, refusing matrices past the condition limit."""
    gram = T @ T.conj().T
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularityError(f"TT* is numerically singular (condition {cond:.3g})")
    try:
        return linalg.cholesky(gram, lower=True), cond
    except linalg.LinAlgError as e:
        raise SingularityError(f"TT* is not positive definite: {e}") from e


def whitened(L, X):
    """L^-1 X, so that tr{(TT*)^-1 X M X*} = tr{Y M Y*} with Y = L^-1 X."""
    return linalg.solve_triangular(L, X, lower=True)


def _signal_parts(decomp, weight):
    U = decomp.u_signal
    g = weight.g
    if g.size != U.shape[1]:
        raise DimensionError(f"{g.size} weights for {U.shape[1]} eigenvectors")
    return U, g


def v_ml_angles(angles, cov):
    cov = as_covariance(cov)
    A = steering_matrix(as_angle_set(angles), cov.m)
    return CriterionValue(float(np.trace(projector_from_steering(A) @ cov.matrix).real))


def v_ml_coefs(coefs, cov):
    # tr{Pi_T R} with Pi_T from an orthonormal basis, so tr{Pi_T} = m - q to rounding
    cov = as_covariance(cov)
    T = toeplitz_annihilator(as_coef_vector(coefs), cov.m)
    P = projector_from_annihilator(T)
    value = np.trace(P @ cov.matrix).real
    return CriterionValue(float(value), float(np.linalg.cond(T) ** 2))


def v_mode(coefs, decomp, weight):
    U, g = _signal_parts(decomp, weight)
    T = toeplitz_annihilator(as_coef_vector(coefs), U.shape[0])
    L, cond = annihilator_gram(T)
    Y = whitened(L, T @ U)
    value = np.sum(g * np.sum(np.abs(Y) ** 2, axis=0))
    return CriterionValue(float(value), cond)


def puma_weight(T, g):
    """W = G kron (TT*)^-1, formed explicitly."""
    gram = T @ T.conj().T
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularityError(f"TT* is numerically singular (condition {cond:.3g})")
    return kron(np.diag(g), linalg.inv(gram)), cond


def v_puma(coefs, decomp, weight):
    U, g = _signal_parts(decomp, weight)
    T = toeplitz_annihilator(as_coef_vector(coefs), U.shape[0])
    W, cond = puma_weight(T, g)
    e = vec(T @ U)
    return CriterionValue(float(np.vdot(e, W @ e).real), cond)
