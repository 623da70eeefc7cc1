import logging
import warnings

import numpy as np
from scipy import linalg

from src.array.geometry import CoefVector, toeplitz_annihilator
from src.array.polynomial import angles_from_coefs
from src.config import CRITERION_FLOOR
from src.criteria.functions import annihilator_gram, v_mode
from src.errors import SingularityError
from src.estimators.config import EstimationResult, EstimatorConfig
from src.estimators.mode import check_degree
from src.estimators.quadratic import quadratic_form_matrix

logger = logging.getLogger(__name__)

# Relative slack before a criterion step counts as an increase
INCREASE_SLACK = 1e-12
# Step halvings tried before a reweighted solve is declared non-improving
MAX_HALVINGS = 30


def solve_leading_gauge(Q):
    """Minimizes c* Q c over c = [1, x]: x = -Q11^-1 Q10."""
    Q11, q10 = Q[1:, 1:], Q[1:, 0]
    with warnings.catch_warnings():
        warnings.simplefilter("error", linalg.LinAlgWarning)
        try:
            x = linalg.solve(Q11, -q10, assume_a="her")
        except (linalg.LinAlgError, linalg.LinAlgWarning):
            # rank-deficient when the extra coefficients are unconstrained
            x = linalg.lstsq(Q11, -q10)[0]
    return CoefVector(np.concatenate(([1.0], x)))


def _evaluate(c, decomp, weight):
    value = v_mode(c, decomp, weight).value
    L, _ = annihilator_gram(toeplitz_annihilator(c, decomp.m))
    return value, L


def backtrack(c_prev, c_new, limit, decomp, weight):
    """First point of c_prev + t (c_new - c_prev), t = 1, 1/2, 1/4, ... with V_MODE <= limit.

    Both ends carry c_0 = 1, so every trial point does too. Returns None when
    no trial point qualifies.
    """
    step = 1.0
    for _ in range(MAX_HALVINGS + 1):
        c = c_new
        if step < 1.0:
            c = CoefVector(c_prev.coefs + step * (c_new.coefs - c_prev.coefs))
        try:
            value, L = _evaluate(c, decomp, weight)
        except SingularityError:
            value = np.inf
        if value <= limit:
            return c, value, L
        step /= 2
    return None


def puma_iterative(decomp, weight, r, config=None, degree=None):
    """Iteratively reweighted minimization of V_MODE in the c_0 = 1 gauge.

    Starts from Omega = I and alternates a linear solve for c_1..c_q with
    Omega = (TT*)^-1. A solve that raises the criterion is pulled back toward
    the previous iterate by step halving, so the recorded history never
    increases. The run converges when the relative criterion change drops
    under ``relative_tolerance`` or when no step along the new direction
    improves on the previous iterate.
    """
    config = config or EstimatorConfig()
    q = r if degree is None else degree
    check_degree(decomp, r, q)
    m = decomp.m
    floor = CRITERION_FLOOR * max(float(weight.g.sum()), np.finfo(float).tiny)

    omega = np.eye(m - q)
    history = []
    c = value = None
    converged = False
    for iteration in range(1, config.max_iterations + 1):
        proposal = solve_leading_gauge(quadratic_form_matrix(decomp, weight, omega, q))
        if c is None:
            try:
                value, L = _evaluate(proposal, decomp, weight)
            except SingularityError as e:
                logger.warning("PUMA stopped at iteration %d: %s", iteration, e)
                break
            c = proposal
        else:
            prev = value
            accepted = backtrack(c, proposal, prev + INCREASE_SLACK * max(prev, floor),
                                 decomp, weight)
            if accepted is None:
                logger.debug("PUMA iteration %d: no step improves V = %.12g", iteration, prev)
                converged = True
                break
            c, value, L = accepted
        history.append(value)
        logger.debug("PUMA iteration %d: V = %.12g", iteration, value)
        if len(history) > 1:
            prev = history[-2]
            if abs(value - prev) <= config.relative_tolerance * max(prev, floor):
                converged = True
                break
        omega = linalg.cho_solve((L, True), np.eye(m - q))

    if c is None:
        raise SingularityError("PUMA could not evaluate any iterate")
    return EstimationResult(
        angles=angles_from_coefs(c),
        coefs=c,
        criterion_value=value,
        iterations_used=len(history),
        converged=converged,
        criterion_history=history,
    )
