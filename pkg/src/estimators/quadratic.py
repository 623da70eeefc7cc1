import logging

import numpy as np
from scipy import linalg

from src.array.geometry import toeplitz_annihilator
from src.config import CONDITION_LIMIT
from src.criteria.vectorize import kron
from src.errors import DimensionError

logger = logging.getLogger(__name__)


def coefficient_map(U, q):
    """Phi with vec(T(c) U) = Phi c.

    Block l is the Hankel matrix Phi_l[i, k] = U[i + k, l], i < m - q, k <= q.
    """
    m, r = U.shape
    n = m - q
    return np.vstack([linalg.hankel(U[:n, l], U[n - 1:, l]) for l in range(r)])


def quadratic_form_matrix(decomp, weight, omega, q):
    """Q = Phi* (G kron Omega) Phi, so that c* Q c = tr{Omega T U G U* T*}."""
    U = decomp.u_signal
    m, r = U.shape
    if not 0 < q < m:
        raise DimensionError(f"need 0 < q < m (q={q}, m={m})")
    if weight.g.size != r:
        raise DimensionError(f"{weight.g.size} weights for {r} eigenvectors")
    omega = np.atleast_2d(np.asarray(omega, dtype=complex))
    if omega.shape != (m - q, m - q):
        raise DimensionError(f"omega must be {m - q}x{m - q}, got {omega.shape}")
    Phi = coefficient_map(U, q)
    Q = Phi.conj().T @ kron(np.diag(weight.g), omega) @ Phi
    return 0.5 * (Q + Q.conj().T)


def reweighting_matrix(coefs, m):
    """Omega = (TT*)^-1 at the current coefficients.

    Past the condition limit the Gram matrix is loaded with
    eps = 1e-12 tr(TT*)/(m-q). Returns (omega, ok); ok is False when even the
    loaded matrix is past the limit.
    """
    T = toeplitz_annihilator(coefs, m)
    gram = T @ T.conj().T
    n = gram.shape[0]
    if np.linalg.cond(gram) <= CONDITION_LIMIT:
        return linalg.cho_solve(linalg.cho_factor(gram), np.eye(n)), True
    eps = 1e-12 * np.trace(gram).real / n
    loaded = gram + eps * np.eye(n)
    ok = bool(np.linalg.cond(loaded) <= CONDITION_LIMIT)
    logger.warning("TT* ill-conditioned, regularizing with eps=%.3g%s",
                   eps, "" if ok else " (still singular)")
    return linalg.cho_solve(linalg.cho_factor(loaded), np.eye(n)), ok
