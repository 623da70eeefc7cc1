"""Randomized property suites behind the ``verify`` command.

Every suite records the largest absolute and relative deviation it saw; a
suite fails when the deviation its tolerance is stated in exceeds the
tolerance. Relative deviations divide by max(1, |reference|).
"""
import logging

import numpy as np

from src.array.geometry import (projector_from_annihilator, projector_from_steering,
                                steering_matrix, toeplitz_annihilator)
from src.array.polynomial import coefs_from_angles
from src.bench.instances import (complex_normal, random_angle_set, random_coefs,
                                 random_decomposition, random_hermitian_psd,
                                 random_scale, random_weight)
from src.config import VERIFY_MAX_M, VERIFY_MAX_R, VERIFY_MIN_SEPARATION
from src.criteria.functions import v_mode, v_ml_coefs, v_puma
from src.criteria.vectorize import kron, vec
from src.errors import ValidationError
from src.state import PropertyRow
from src.stats.covariance import SignalWeight

logger = logging.getLogger(__name__)

# name -> (tolerance, which deviation it bounds)
SUITES = {
    "equivalence": (1e-10, "rel"),
    "projector_identity": (1e-10, "abs"),
    "annihilation": (1e-12, "abs"),
    "gauge_invariance": (1e-10, "rel"),
    "identity_covariance": (1e-12, "abs"),
    "vec_lemma": (1e-12, "abs"),
    "trace_lemma": (1e-12, "abs"),
}

# G perturbation applied to the V_PUMA path only by the fault self-test
FAULT_PERTURBATION = 1e-6


def default_sizes(max_m=VERIFY_MAX_M, max_r=VERIFY_MAX_R):
    return [(m, r) for m in range(3, max_m + 1) for r in range(1, min(max_r, m - 1) + 1)]


class DeviationTracker:
    def __init__(self):
        self.count = {name: 0 for name in SUITES}
        self.max_abs = {name: 0.0 for name in SUITES}
        self.max_rel = {name: 0.0 for name in SUITES}

    def add(self, name, deviation, reference=0.0):
        deviation = float(deviation)
        rel = deviation / max(1.0, abs(float(reference)))
        self.count[name] += 1
        # NaN must register as a failure, so compare with "not <="
        if not deviation <= self.max_abs[name]:
            self.max_abs[name] = deviation
        if not rel <= self.max_rel[name]:
            self.max_rel[name] = rel

    def rows(self):
        rows = []
        for name, (tol, measure) in SUITES.items():
            if not self.count[name]:
                continue
            worst = self.max_rel[name] if measure == "rel" else self.max_abs[name]
            rows.append(PropertyRow(
                name=name,
                instances=self.count[name],
                max_abs=self.max_abs[name],
                max_rel=self.max_rel[name],
                tolerance=tol,
                measure=measure,
                passed=bool(worst <= tol),
            ))
        return rows


def check_instance(rng, m, r, tracker, inject_fault=False):
    decomp = random_decomposition(rng, m, r)
    weight = random_weight(rng, r)
    c = random_coefs(rng, r)

    mode_value = v_mode(c, decomp, weight).value
    puma_w = SignalWeight(weight.g * (1 + FAULT_PERTURBATION)) if inject_fault else weight
    tracker.add("equivalence", abs(v_puma(c, decomp, puma_w).value - mode_value), mode_value)

    angles = random_angle_set(rng, r, VERIFY_MIN_SEPARATION)
    A = steering_matrix(angles, m)
    T = toeplitz_annihilator(coefs_from_angles(angles), m)
    tracker.add("projector_identity", np.linalg.norm(
        projector_from_steering(A) - projector_from_annihilator(T), "fro"))
    tracker.add("annihilation", np.abs(T @ A).max())

    alpha = random_scale(rng)
    R = random_hermitian_psd(rng, m)
    scaled = c.scaled(alpha)
    for f, data in ((v_ml_coefs, (R,)), (v_mode, (decomp, weight)), (v_puma, (decomp, weight))):
        ref = f(c, *data).value
        tracker.add("gauge_invariance", abs(f(scaled, *data).value - ref), ref)

    tracker.add("identity_covariance", abs(v_ml_coefs(c, np.eye(m)).value - (m - r)), m - r)

    X, Y, Z = complex_normal(rng, (3, 4)), complex_normal(rng, (4, 2)), complex_normal(rng, (2, 5))
    tracker.add("vec_lemma", np.abs(vec(X @ Y @ Z) - kron(Z.T, X) @ vec(Y)).max())
    X, Y = complex_normal(rng, (4, 3)), complex_normal(rng, (4, 3))
    tracker.add("trace_lemma", abs(np.trace(X.conj().T @ Y) - np.vdot(vec(X), vec(Y))))


def cmd_verify(sizes=None, n_instances=1000, seed=0, inject_fault=False):
    """Runs all suites over ``n_instances`` instances cycling through ``sizes``.

    Returns (rows, passed). Zero instances yields an empty, passing report.
    """
    sizes = list(sizes) if sizes else default_sizes()
    for m, r in sizes:
        if not 0 < r < m <= 16:
            raise ValidationError(f"verify sizes need 0 < r < m <= 16, got m={m}, r={r}")
    tracker = DeviationTracker()
    for i in range(n_instances):
        m, r = sizes[i % len(sizes)]
        check_instance(np.random.default_rng([seed, i]), m, r, tracker, inject_fault)
    rows = tracker.rows()
    for row in rows:
        if not row["passed"]:
            logger.warning("property %s violated: max %s deviation %.3g > %.1g",
                           row["name"], row["measure"], max(row["max_abs"], row["max_rel"]),
                           row["tolerance"])
    return rows, all(row["passed"] for row in rows)


def format_report(rows):
    lines = [f"{'property':<22}{'n':>7}{'max_abs':>12}{'max_rel':>12}{'tol':>10}  status"]
    for row in rows:
        lines.append(
            f"{row['name']:<22}{row['instances']:>7}{row['max_abs']:>12.3e}"
            f"{row['max_rel']:>12.3e}{row['tolerance']:>10.0e}  "
            f"{'ok' if row['passed'] else 'FAIL'}")
    return "\n".join(lines)
