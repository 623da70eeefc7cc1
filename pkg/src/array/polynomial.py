"""Correspondence between DOA angles and annihilating-polynomial coefficients.

Coefficients are stored in ascending powers: c[k] multiplies z^k.
"""
import numpy as np
from scipy import linalg

from src.array.geometry import AngleSet, CoefVector, as_angle_set, as_coef_vector
from src.config import DEGREE_COLLAPSE_TOL
from src.errors import DegenerateDegreeError, NumericalError


def coefs_from_angles(angles):
    """Expands prod_k (1 - e^{-j phi_k} z) with c_0 = 1; roots are e^{j phi_k}."""
    angles = as_angle_set(angles)
    c = np.ones(1, dtype=complex)
    for phi in angles.angles:
        c = np.convolve(c, [1.0, -np.exp(-1j * phi)])
    return CoefVector(c)


def polynomial_roots(coefs):
    """Roots of c_0 + ... + c_q z^q via eigenvalues of the monic companion matrix."""
    c = as_coef_vector(coefs).coefs
    if np.abs(c[-1]) <= DEGREE_COLLAPSE_TOL * np.linalg.norm(c):
        raise DegenerateDegreeError(f"leading coefficient c_{c.size - 1} vanished")
    # companion() wants highest degree first and divides by it
    try:
        roots = linalg.eigvals(linalg.companion(c[::-1]))
    except (linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"root finding failed: {e}") from e
    if not np.all(np.isfinite(roots)):
        raise NumericalError("root finding returned non-finite roots")
    return roots


def angles_from_coefs(coefs):
    """Projects each root to the unit circle by its argument, sorted ascending."""
    return AngleSet.from_roots(np.angle(polynomial_roots(coefs)))
