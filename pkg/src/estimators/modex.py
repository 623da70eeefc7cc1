"""MODEX and Enhanced-PUMA.

Fit the plain degree-r annihilator and one of degree q = r + p with the base
estimator (two-step MODE for MODEX, PUMA for EPUMA). The r + (r + p) root
angles form the candidate pool, and the r-subset with the smallest V_ML wins.
The plain estimate is itself a subset, so the winner never scores worse than
it. The signal subspace and G stay r-dimensional; only the polynomial grows.
"""
import logging
from itertools import combinations

import numpy as np

from src.array.geometry import AngleSet
from src.criteria.functions import v_ml_angles
from src.errors import SingularityError
from src.estimators.config import CandidateScore, EstimationResult, Method
from src.estimators.mode import mode_two_step
from src.estimators.puma import puma_iterative
from src.stats.covariance import as_covariance

logger = logging.getLogger(__name__)


def score_subsets(candidates, r, cov):
    """V_ML for every r-subset of the candidate angles, in lexicographic index order."""
    log = []
    for idx in combinations(range(len(candidates)), r):
        subset = AngleSet.from_roots(candidates.angles[list(idx)])
        try:
            value = v_ml_angles(subset, cov).value
        except SingularityError:
            # coincident candidates, e.g. a root pair z, 1/z*
            value = np.inf
        logger.debug("subset %s -> V_ML = %.12g", idx, value)
        log.append(CandidateScore(idx, subset, value))
    return log


def candidate_pool(plain, extended):
    if extended is None:
        return plain.angles
    return AngleSet.from_roots(np.concatenate((plain.angles.angles, extended.angles.angles)))


def modex(cov, decomp, weight, r, config):
    cov = as_covariance(cov)
    config.check_dimensions(cov.m, r)
    base = puma_iterative if config.method is Method.EPUMA else mode_two_step
    plain = base(decomp, weight, r, config)
    extended = None
    if config.p_extra:
        extended = base(decomp, weight, r, config, degree=r + config.p_extra)
    log = score_subsets(candidate_pool(plain, extended), r, cov)
    # min() keeps the first of equal scores
    winner = min(log, key=lambda s: s.value)
    fit = plain if extended is None else extended
    return EstimationResult(
        angles=winner.angles,
        coefs=fit.coefs,
        criterion_value=winner.value,
        iterations_used=plain.iterations_used + (0 if extended is None else extended.iterations_used),
        converged=plain.converged and fit.converged,
        candidate_log=log,
        criterion_history=fit.criterion_history,
    )
