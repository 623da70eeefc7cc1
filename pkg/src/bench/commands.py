"""Command bodies behind app.py: file-level estimate/simulate and sweep overrides."""
import numpy as np

from src.bench.monte_carlo import SweepSpec
from src.bench.snapshot_io import read_snapshots, write_snapshots
from src.config import load_yaml
from src.errors import DimensionError, ValidationError
from src.estimators.config import EstimatorConfig
from src.estimators.pipeline import estimate
from src.stats.covariance import sample_covariance
from src.stats.simulation import Scenario, simulate_snapshots


def load_scenario(path):
    return Scenario.model_validate(load_yaml(path))


def cmd_simulate(scenario, output_path):
    snapshots = simulate_snapshots(scenario)
    write_snapshots(output_path, snapshots)
    return snapshots


def cmd_estimate(input_path, m, r, method="MODE", p_extra=0):
    snapshots = read_snapshots(input_path)
    if snapshots.m != m:
        raise DimensionError(f"file holds {snapshots.m}-sensor snapshots, expected m={m}")
    config = EstimatorConfig(method=method, p_extra=p_extra)
    config.check_dimensions(m, r)
    return estimate(sample_covariance(snapshots), r, config)


def format_estimate(result):
    angles = " ".join(f"{phi:.10f}" for phi in result.angles)
    lines = [
        f"angles_rad: {angles}",
        f"criterion: {result.criterion_value:.12g}",
        f"iterations: {result.iterations_used}",
        f"converged: {str(result.converged).lower()}",
    ]
    if result.candidate_log:
        for cand in result.candidate_log:
            lines.append(f"  subset {cand.indices}: V_ML = {cand.value:.12g}")
    return "\n".join(lines)


def apply_overrides(spec, seed=None, trials=None, method=None, p_extra=None,
                    success_threshold=None):
    """Re-validated SweepSpec with CLI flags taking precedence over the file."""
    fields = dict(spec)
    if seed is not None:
        fields["base_seed"] = seed
    if trials is not None:
        fields["n_trials"] = trials
    if success_threshold is not None:
        fields["success_threshold"] = success_threshold
    if method is not None:
        fields["methods"] = [EstimatorConfig(method=method, p_extra=p_extra or 0)]
    elif p_extra is not None:
        fields["methods"] = [
            EstimatorConfig(**{**dict(cfg), "p_extra": p_extra}) if cfg.method.uses_extra_coefs
            else cfg
            for cfg in spec.methods
        ]
    return SweepSpec(**fields)


def parse_sizes(text):
    """"6x2,8x3" -> [(6, 2), (8, 3)]."""
    sizes = []
    for item in text.split(","):
        try:
            m, r = (int(v) for v in item.lower().split("x"))
        except ValueError:
            raise ValidationError(f"bad size {item!r}, expected <m>x<r>") from None
        sizes.append((m, r))
    return sizes


def snapshot_summary(snapshots):
    Y = snapshots.snapshots
    return f"m={Y.shape[0]} T={Y.shape[1]} power={np.mean(np.abs(Y) ** 2):.6g}"
