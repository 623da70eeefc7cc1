from typing import TypedDict


class TrialRecord(TypedDict):
    method: str             # EstimatorConfig.label, e.g. "MODE", "MODEX-p2"
    m: int
    r: int
    snr_db: float           # 10 log10(tr(P) / (r sigma^2)), inf when noiseless
    n_snapshots: int
    trial_index: int        # -1 on aggregate rows
    rmse_rad: float         # NaN when the estimator failed
    criterion_value: float
    converged: float        # bool per trial, fraction on aggregate rows
    success: float          # bool per trial, rate on aggregate rows
    wall_time_ms: float     # 0 unless timing was requested


class PropertyRow(TypedDict):
    name: str               # property suite, e.g. "equivalence"
    instances: int
    max_abs: float
    max_rel: float
    tolerance: float
    measure: str            # "abs" or "rel": which deviation the tolerance bounds
    passed: bool
