"""Covariance -> eigendecomposition -> weight -> estimator, dispatched on method."""
from src.estimators.config import EstimatorConfig, Method
from src.estimators.mode import mode_two_step
from src.estimators.modex import modex
from src.estimators.puma import puma_iterative
from src.stats.covariance import as_covariance, signal_weight, subspace_decomposition


def estimate(cov, r, config=None):
    config = config or EstimatorConfig()
    cov = as_covariance(cov)
    config.check_dimensions(cov.m, r)
    decomp = subspace_decomposition(cov, r)
    weight = signal_weight(decomp)
    if config.method.uses_extra_coefs:
        return modex(cov, decomp, weight, r, config)
    if config.method is Method.PUMA:
        return puma_iterative(decomp, weight, r, config)
    return mode_two_step(decomp, weight, r, config)
