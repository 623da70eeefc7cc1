"""Two-step MODE.

Coefficients are kept conjugate symmetric (c_k = conj(c_{q-k})) with unit
norm. Writing c = J rho with rho real turns each step into the smallest
eigenvector of Re(J* Q J):

    step 1: Omega = I
    step 2: Omega = (T(c1) T(c1)*)^-1
    extra reweights repeat step 2 at the latest estimate.
"""
import numpy as np
from scipy import linalg

from src.array.geometry import CoefVector
from src.array.polynomial import angles_from_coefs
from src.criteria.functions import v_mode
from src.errors import DimensionError
from src.estimators.config import EstimationResult, EstimatorConfig
from src.estimators.quadratic import quadratic_form_matrix, reweighting_matrix


def conjugate_symmetric_basis(q):
    """(q+1) x (q+1) J with orthonormal columns; J rho is conjugate symmetric for real rho."""
    J = np.zeros((q + 1, q + 1), dtype=complex)
    s = 1 / np.sqrt(2)
    col = 0
    for k in range((q + 1) // 2):
        J[k, col] = J[q - k, col] = s
        J[k, col + 1] = 1j * s
        J[q - k, col + 1] = -1j * s
        col += 2
    if q % 2 == 0:
        J[q // 2, col] = 1.0
    return J


def minimize_conjugate_symmetric(Q, J):
    B = (J.conj().T @ Q @ J).real
    _, v = linalg.eigh(0.5 * (B + B.T), subset_by_index=[0, 0])
    return CoefVector(J @ v[:, 0])


def check_degree(decomp, r, q):
    if decomp.r != r:
        raise DimensionError(f"decomposition holds {decomp.r} eigenvectors, expected r={r}")
    if not r <= q < decomp.m:
        raise DimensionError(f"need r <= q < m (r={r}, q={q}, m={decomp.m})")


def mode_two_step(decomp, weight, r, config=None, degree=None):
    config = config or EstimatorConfig()
    q = r if degree is None else degree
    check_degree(decomp, r, q)
    m = decomp.m
    J = conjugate_symmetric_basis(q)

    c = minimize_conjugate_symmetric(
        quadratic_form_matrix(decomp, weight, np.eye(m - q), q), J)
    iterations, converged = 1, True
    history = [v_mode(c, decomp, weight).value]
    for _ in range(1 + config.mode_extra_reweights):
        omega, ok = reweighting_matrix(c, m)
        converged = converged and ok
        c = minimize_conjugate_symmetric(quadratic_form_matrix(decomp, weight, omega, q), J)
        iterations += 1
        history.append(v_mode(c, decomp, weight).value)

    return EstimationResult(
        angles=angles_from_coefs(c),
        coefs=c,
        criterion_value=history[-1],
        iterations_used=iterations,
        converged=converged,
        criterion_history=history,
    )
