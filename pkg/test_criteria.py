import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from src.array.polynomial import coefs_from_angles
from src.bench.instances import (complex_normal, random_coefs, random_decomposition,
                                 random_hermitian_psd, random_scale, random_weight)
from src.criteria.functions import v_ml_angles, v_ml_coefs, v_mode, v_puma
from src.criteria.vectorize import kron, unvec, vec
from src.errors import DimensionError, SingularityError
from src.stats.covariance import SignalWeight, SubspaceDecomposition
from src.stats.simulation import Scenario, true_covariance


def scalar_chain():
    """m=2, r=1, U=[1, 0]^T, g=[2]."""
    return SubspaceDecomposition(np.array([[1.0], [0.0]]), [2.0], 0.0), SignalWeight([2.0])


def random_sizes(rng):
    m = int(rng.integers(3, 13))
    return m, int(rng.integers(1, min(4, m - 1) + 1))


def test_v_ml_angles_examples():
    print("\n--- V_ML over angles ---")
    s = Scenario(m=6, r=2, angles=[-0.4, 0.7], noise_power=0.0)
    assert abs(v_ml_angles(s.angle_set, true_covariance(s)).value) <= 1e-10
    assert_allclose(v_ml_angles([-0.4, 0.7], np.eye(6)).value, 4.0, atol=1e-12)
    with pytest.raises(SingularityError):
        v_ml_angles([0.2, 0.2 + 1e-12], np.eye(6))


def test_v_ml_coefs_examples():
    assert_allclose(v_ml_coefs([1, -1], np.eye(2)).value, 1.0, atol=1e-15)
    s = Scenario(m=6, r=2, angles=[-0.4, 0.7], noise_power=0.0)
    c = coefs_from_angles(s.angle_set)
    assert abs(v_ml_coefs(c, true_covariance(s)).value) <= 1e-10


def test_v_ml_coefs_matches_angle_form():
    R = random_hermitian_psd(np.random.default_rng(3), 7)
    angles = [-2.0, 0.1, 1.4]
    assert_allclose(v_ml_coefs(coefs_from_angles(angles), R).value,
                    v_ml_angles(angles, R).value, rtol=1e-10)


def test_identity_covariance_constant():
    rng = np.random.default_rng(8)
    for _ in range(100):
        m, r = random_sizes(rng)
        c = random_coefs(rng, r)
        assert abs(v_ml_coefs(c, np.eye(m)).value - (m - r)) <= 1e-12


def test_mode_and_puma_scalar_chain():
    decomp, weight = scalar_chain()
    assert_allclose(v_mode([1, -1], decomp, weight).value, 1.0)
    assert_allclose(v_puma([1, -1], decomp, weight).value, 1.0)
    zero = SignalWeight([0.0])
    assert v_mode([1, -1], decomp, zero).value == 0.0
    assert v_puma([1, -1], decomp, zero).value == 0.0


def test_mode_weight_size_must_match():
    decomp, _ = scalar_chain()
    with pytest.raises(DimensionError):
        v_mode([1, -1], decomp, SignalWeight([1.0, 1.0]))


def test_mode_puma_equivalence():
    print("\n--- V_MODE == V_PUMA ---")
    rng = np.random.default_rng(20170301)
    worst = 0.0
    for _ in range(1000):
        m, r = random_sizes(rng)
        decomp, weight = random_decomposition(rng, m, r), random_weight(rng, r)
        c = random_coefs(rng, r)
        a = v_mode(c, decomp, weight).value
        b = v_puma(c, decomp, weight).value
        worst = max(worst, abs(a - b) / max(1.0, a))
    print(f"max relative deviation {worst:.3e}")
    assert worst <= 1e-10


def test_gauge_invariance():
    rng = np.random.default_rng(99)
    m, r = 8, 3
    decomp, weight = random_decomposition(rng, m, r), random_weight(rng, r)
    R = random_hermitian_psd(rng, m)
    c = random_coefs(rng, r)
    reference = [v_ml_coefs(c, R).value, v_mode(c, decomp, weight).value,
                 v_puma(c, decomp, weight).value]
    for _ in range(100):
        scaled = c.scaled(random_scale(rng))
        values = [v_ml_coefs(scaled, R).value, v_mode(scaled, decomp, weight).value,
                  v_puma(scaled, decomp, weight).value]
        for got, ref in zip(values, reference):
            assert abs(got - ref) <= 1e-10 * max(1.0, ref)


def test_vec_and_kron_examples():
    assert_array_equal(vec(np.array([[1, 2], [3, 4]])), [1, 3, 2, 4])
    B = np.array([[1, 2], [3, 4]])
    K = kron(np.eye(2), B)
    assert_array_equal(K[:2, :2], B)
    assert_array_equal(K[2:, 2:], B)
    assert_array_equal(K[:2, 2:], 0)
    assert_array_equal(unvec([1, 3, 2, 4], 2), [[1, 2], [3, 4]])
    with pytest.raises(DimensionError):
        vec(np.ones(3))
    with pytest.raises(DimensionError):
        unvec(np.ones(5), 2)


def test_vec_and_trace_lemmas():
    rng = np.random.default_rng(5)
    for _ in range(200):
        n1, n2, n3, n4 = (int(k) for k in rng.integers(1, 6, 4))
        X, Y, Z = (complex_normal(rng, (n1, n2)), complex_normal(rng, (n2, n3)),
                   complex_normal(rng, (n3, n4)))
        assert np.abs(vec(X @ Y @ Z) - kron(Z.T, X) @ vec(Y)).max() <= 1e-12
        X, Y = complex_normal(rng, (n1, n2)), complex_normal(rng, (n1, n2))
        assert abs(np.trace(X.conj().T @ Y) - np.vdot(vec(X), vec(Y))) <= 1e-12
