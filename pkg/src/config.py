import yaml

# --- Numerical Tolerances ---
# Gram matrices (A*A, TT*) above this condition number are treated as singular
CONDITION_LIMIT = 1e12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10          # eigenvalue floor, relative to the largest eigenvalue
ORTHONORMAL_TOL = 1e-10
# Leading coefficient below this fraction of ||c|| counts as a collapsed degree
DEGREE_COLLAPSE_TOL = 1e-14

# --- Estimator Defaults ---
MAX_ITERATIONS = 20
RELATIVE_TOLERANCE = 1e-10
# Scale floor for PUMA's relative-change test, as a fraction of sum(g)
CRITERION_FLOOR = 1e-12

# --- Benchmark Defaults ---
SUCCESS_THRESHOLD = 0.1  # rad, every angle error must be within this
DEFAULT_JOBS = 1
VERIFY_INSTANCES = 1000
VERIFY_SEED = 20170301
VERIFY_MAX_M = 12
VERIFY_MAX_R = 4
VERIFY_MIN_SEPARATION = 0.05

CSV_COLUMNS = [
    "method", "m", "r", "snr_db", "n_snapshots", "trial_index",
    "rmse_rad", "criterion_value", "converged", "success", "wall_time_ms",
]
AGGREGATE_TRIAL_INDEX = -1


# --- Config Files ---
def load_yaml(path):
    """Reads a YAML mapping; a missing file is an I/O error, not an empty config."""
    with open(path, "r") as f:
        data = yaml.safe_load(f)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a key-value mapping at the top level")
    return data
