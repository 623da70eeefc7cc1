"""Monte Carlo sweeps over SNR and snapshot count, written as CSV.

Cells are (snr, T) pairs, SNR outer. Trial t of cell k draws its snapshots
from seed(base_seed, k, t), and every method in the sweep is run on those
same snapshots. Rows come out ordered by (cell, trial, method) whatever the
worker count; each cell ends with one aggregate row per method
(trial_index = -1).
"""
import csv
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config import AGGREGATE_TRIAL_INDEX, CSV_COLUMNS, SUCCESS_THRESHOLD, load_yaml
from src.errors import DoaError
from src.estimators.config import EstimatorConfig
from src.estimators.metrics import match_angles
from src.estimators.pipeline import estimate
from src.state import TrialRecord
from src.stats.covariance import sample_covariance
from src.stats.simulation import Scenario, simulate_snapshots

logger = logging.getLogger(__name__)

SNR_DEFINITION = "snr_db = 10*log10(tr(P)/(r*sigma^2))"


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    base: Scenario
    snr_db_list: List[float] = Field(min_length=1)
    snapshots_list: List[int] = Field(min_length=1)
    methods: List[EstimatorConfig] = Field(min_length=1)
    n_trials: int = Field(gt=0)
    base_seed: int = Field(default=0, ge=0, lt=2 ** 64)
    success_threshold: float = Field(default=SUCCESS_THRESHOLD, gt=0)

    @model_validator(mode="after")
    def _check_sweep(self):
        if any(t < 1 for t in self.snapshots_list):
            raise ValueError("snapshot counts must be positive")
        for config in self.methods:
            config.check_dimensions(self.base.m, self.base.r)
        return self

    @classmethod
    def from_yaml(cls, path):
        return cls.model_validate(load_yaml(path))

    def cells(self):
        return [(snr, T) for snr in self.snr_db_list for T in self.snapshots_list]


def trial_seed(base_seed, cell, trial):
    seq = np.random.SeedSequence(base_seed, spawn_key=(cell, trial))
    return int(seq.generate_state(1, np.uint64)[0])


def run_trial(spec, cell, snr_db, n_snapshots, trial, timing=False):
    """All methods on one simulated data set; one TrialRecord per method."""
    scenario = (spec.base.with_snr(snr_db)
                .with_snapshots(n_snapshots)
                .with_seed(trial_seed(spec.base_seed, cell, trial)))
    cov = sample_covariance(simulate_snapshots(scenario))
    records = []
    for config in spec.methods:
        start = time.perf_counter()
        try:
            result = estimate(cov, scenario.r, config)
            errors = match_angles(result.angles, scenario.angle_set)
            rmse, value = errors.rmse, result.criterion_value
            converged, success = result.converged, errors.within(spec.success_threshold)
        except (DoaError, np.linalg.LinAlgError) as e:
            logger.warning("%s failed on cell %d trial %d: %s", config.label, cell, trial, e)
            rmse = value = math.nan
            converged = success = False
        elapsed = (time.perf_counter() - start) * 1e3 if timing else 0.0
        records.append(TrialRecord(
            method=config.label,
            m=scenario.m,
            r=scenario.r,
            snr_db=float(snr_db),
            n_snapshots=int(n_snapshots),
            trial_index=trial,
            rmse_rad=float(rmse),
            criterion_value=float(value),
            converged=bool(converged),
            success=bool(success),
            wall_time_ms=elapsed,
        ))
    return records


def summarize_records(records):
    """Aggregate rows per (method, m, r, snr, T), in first-seen order.

    RMSE pools squared errors over trials that produced an estimate; the
    converged and success columns become rates over all trials.
    """
    groups = {}
    for rec in records:
        if rec["trial_index"] == AGGREGATE_TRIAL_INDEX:
            continue
        key = (rec["method"], rec["m"], rec["r"], rec["snr_db"], rec["n_snapshots"])
        groups.setdefault(key, []).append(rec)
    summary = []
    for (method, m, r, snr_db, n_snapshots), group in groups.items():
        ok = [rec for rec in group if not math.isnan(rec["rmse_rad"])]
        summary.append(TrialRecord(
            method=method,
            m=m,
            r=r,
            snr_db=snr_db,
            n_snapshots=n_snapshots,
            trial_index=AGGREGATE_TRIAL_INDEX,
            rmse_rad=float(np.sqrt(np.mean([rec["rmse_rad"] ** 2 for rec in ok]))) if ok else math.nan,
            criterion_value=float(np.mean([rec["criterion_value"] for rec in ok])) if ok else math.nan,
            converged=float(np.mean([rec["converged"] for rec in group])),
            success=float(np.mean([rec["success"] for rec in group])),
            wall_time_ms=float(np.mean([rec["wall_time_ms"] for rec in group])),
        ))
    return summary


def _format(value):
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(f, spec, records):
    f.write(f"# {SNR_DEFINITION}; aggregate rows carry trial_index = {AGGREGATE_TRIAL_INDEX}\n")
    f.write(f"# base_seed={spec.base_seed} n_trials={spec.n_trials} "
            f"success_threshold={spec.success_threshold!r}\n")
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow([_format(rec[col]) for col in CSV_COLUMNS])


def run_sweep(spec, jobs=1, timing=False):
    """Every trial and aggregate record of the sweep, in output order."""
    cells = spec.cells()
    tasks = [(cell, snr, T, trial)
             for cell, (snr, T) in enumerate(cells) for trial in range(spec.n_trials)]
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        per_trial = list(pool.map(lambda task: run_trial(spec, *task, timing=timing), tasks))

    records = []
    for cell, (snr, T) in enumerate(cells):
        block = [rec for recs in per_trial[cell * spec.n_trials:(cell + 1) * spec.n_trials]
                 for rec in recs]
        records.extend(block)
        records.extend(summarize_records(block))
        logger.info("--- cell %d/%d: snr=%s dB, T=%d, %d trials ---",
                    cell + 1, len(cells), snr, T, spec.n_trials)
    return records


def cmd_mc(spec, output_path, jobs=1, timing=False):
    # open first so an unwritable path fails before any simulation
    with open(output_path, "w", newline="") as f:
        records = run_sweep(spec, jobs=jobs, timing=timing)
        write_csv(f, spec, records)
    return records
