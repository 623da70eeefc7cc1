import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from src.array.geometry import (AngleSet, CoefVector, projector_from_annihilator,
                                projector_from_steering, steering_matrix,
                                toeplitz_annihilator, wrap_angle)
from src.array.polynomial import angles_from_coefs, coefs_from_angles, polynomial_roots
from src.bench.instances import random_angle_set
from src.errors import (DegenerateDegreeError, DimensionError, SingularityError,
                        ValidationError)


def test_steering_matrix_examples():
    print("\n--- Steering matrix ---")
    assert_allclose(steering_matrix([0.0], 3), np.ones((3, 1)))
    assert_allclose(steering_matrix([np.pi], 2), [[1], [-1]], atol=1e-15)
    A = steering_matrix([-np.pi / 2, np.pi / 2], 4)
    assert_allclose(A[:, 1], [1, 1j, -1, -1j], atol=1e-15)
    assert_allclose(A[:, 0], [1, -1j, -1, 1j], atol=1e-15)


def test_steering_matrix_needs_more_sensors_than_sources():
    with pytest.raises(DimensionError):
        steering_matrix([-0.5, 0.5], 2)


def test_coefs_from_angles_examples():
    assert_allclose(coefs_from_angles([0.0]).coefs, [1, -1])
    assert_allclose(coefs_from_angles([np.pi / 2]).coefs, [1, 1j], atol=1e-15)
    assert_allclose(coefs_from_angles([0.0, np.pi]).coefs, [1, 0, -1], atol=1e-15)


def test_roots_and_angles_from_coefs():
    assert_allclose(polynomial_roots([1, -1]), [1.0])
    assert_allclose(angles_from_coefs([1, -1]).angles, [0.0], atol=1e-15)
    assert_allclose(angles_from_coefs([1, 0, -1]).angles, [0.0, np.pi], atol=1e-12)


def test_angles_coefs_roundtrip_random():
    rng = np.random.default_rng(7)
    for r in range(1, 5):
        for _ in range(25):
            angles = random_angle_set(rng, r, 0.05)
            back = angles_from_coefs(coefs_from_angles(angles))
            assert_allclose(back.angles, angles.angles, rtol=0, atol=1e-9)


def test_collapsed_degree_is_rejected():
    with pytest.raises(DegenerateDegreeError):
        polynomial_roots([1, -1, 0])


def test_toeplitz_annihilator_examples():
    assert_array_equal(toeplitz_annihilator([1, -1], 3), [[1, -1, 0], [0, 1, -1]])
    assert_array_equal(toeplitz_annihilator([1, -1], 2), [[1, -1]])
    with pytest.raises(DimensionError):
        toeplitz_annihilator([1, 0, -1], 2)


def test_projector_examples():
    print("\n--- Projectors ---")
    expected = 0.5 * np.array([[1, -1], [-1, 1]])
    assert_allclose(projector_from_annihilator(np.array([[1, -1]])), expected, atol=1e-15)
    assert_allclose(projector_from_steering(np.array([[1], [1]])), expected, atol=1e-15)


def test_coincident_angles_are_singular():
    A = np.exp(1j * np.outer(np.arange(5), [0.3, 0.3]))
    with pytest.raises(SingularityError):
        projector_from_steering(A)


def test_annihilation_and_projector_identity():
    rng = np.random.default_rng(2017)
    for i in range(200):
        m = int(rng.integers(2, 11))
        r = int(rng.integers(1, min(4, m - 1) + 1))
        angles = random_angle_set(rng, r, 0.05)
        A = steering_matrix(angles, m)
        T = toeplitz_annihilator(coefs_from_angles(angles), m)
        assert np.abs(T @ A).max() <= 1e-12
        diff = projector_from_steering(A) - projector_from_annihilator(T)
        assert np.linalg.norm(diff, "fro") <= 1e-10, f"instance {i}: m={m}, r={r}"


def test_projectors_are_idempotent_and_hermitian():
    angles = AngleSet([-1.2, 0.1, 2.0])
    P = projector_from_steering(steering_matrix(angles, 7))
    assert_allclose(P @ P, P, atol=1e-13)
    assert_allclose(P, P.conj().T, atol=0)
    assert_allclose(np.trace(P).real, 4, atol=1e-12)


def test_wrap_angle():
    assert_allclose(wrap_angle(np.pi), np.pi)
    assert_allclose(wrap_angle(-np.pi), np.pi)
    assert_allclose(wrap_angle(3 * np.pi / 2), -np.pi / 2)
    assert_allclose(wrap_angle(2 * np.pi - 0.02), -0.02, atol=1e-15)
    in_range = np.array([-0.2, 0.5, -np.pi + 1e-9, np.pi])
    assert_array_equal(wrap_angle(in_range), in_range)


def test_angle_set_validation():
    with pytest.raises(ValidationError):
        AngleSet([0.5, 0.1])
    with pytest.raises(ValidationError):
        AngleSet([0.1, 0.1])
    with pytest.raises(ValidationError):
        AngleSet([-np.pi])
    with pytest.raises(ValidationError):
        AngleSet([])
    assert list(AngleSet.from_unsorted([0.5, -0.2])) == [-0.2, 0.5]
    # roots may coincide after projection
    assert len(AngleSet.from_roots([0.3, 0.3])) == 2


def test_coef_vector_validation():
    with pytest.raises(ValidationError):
        CoefVector([0, 1])
    with pytest.raises(ValidationError):
        CoefVector([1])
    with pytest.raises(ValidationError):
        CoefVector([1, np.nan])
    c = CoefVector([1, -1j, 2])
    assert c.degree == 2
    assert_allclose(c.scaled(2j).coefs, [2j, 2, 4j])
