from typing import NamedTuple

import numpy as np

from src.array.geometry import wrap_angle
from src.errors import ValidationError


class AngleErrors(NamedTuple):
    errors: np.ndarray   # principal value of estimate - truth, paired after sorting
    rmse: float

    def within(self, threshold):
        return bool(np.all(np.abs(self.errors) <= threshold))


def match_angles(estimate, truth):
    est = np.sort(np.atleast_1d(np.asarray(getattr(estimate, "angles", estimate), dtype=float)))
    ref = np.sort(np.atleast_1d(np.asarray(getattr(truth, "angles", truth), dtype=float)))
    if est.shape != ref.shape or est.size == 0:
        raise ValidationError(f"cannot pair {est.size} estimates with {ref.size} true angles")
    errors = wrap_angle(est - ref)
    return AngleErrors(errors, float(np.sqrt(np.mean(errors ** 2))))
