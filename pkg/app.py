"""Command-line harness for the ULA subspace-fitting toolkit.

    python app.py verify   [--trials N] [--seed S] [--sizes 6x2,8x3] [--inject-fault]
    python app.py mc       --config sweep.yaml --out results.csv [--jobs N] [--timing] ...
    python app.py estimate snapshots.txt --m 4 --r 1 [--method mode|puma|modex|epuma] [--p-extra P]
    python app.py simulate --config scenario.yaml --out snapshots.txt [--seed S]

Exit codes: 0 success, 1 validation error, 2 numerical/property failure, 3 I/O error.
"""
import argparse
import logging
import sys

from src.bench.commands import (apply_overrides, cmd_estimate, cmd_simulate, format_estimate,
                                load_scenario, parse_sizes, snapshot_summary)
from src.bench.monte_carlo import SweepSpec, cmd_mc
from src.bench.verify import cmd_verify, format_report
from src.config import DEFAULT_JOBS, VERIFY_INSTANCES, VERIFY_SEED
from src.errors import EXIT_OK, PropertyViolation, exit_code_for

logger = logging.getLogger(__name__)

METHOD_CHOICES = ["mode", "puma", "modex", "epuma"]


def banner(text):
    print(f"--- {text} ---", file=sys.stderr)


def parse_args(argv=None):
    p = argparse.ArgumentParser(description="ULA DOA estimation: MODE / PUMA / MODEX toolkit")
    p.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="Run the criterion/projector property suites")
    v.add_argument("--trials", type=int, default=VERIFY_INSTANCES,
                   help="Number of random instances")
    v.add_argument("--seed", type=int, default=VERIFY_SEED)
    v.add_argument("--sizes", default=None,
                   help="Comma-separated <m>x<r> sizes (default: m<=12, r<=4)")
    v.add_argument("--inject-fault", action="store_true",
                   help="Self-test: perturb G by 1e-6 on the V_PUMA path")

    mc = sub.add_parser("mc", help="Monte Carlo sweep to CSV")
    mc.add_argument("--config", required=True, help="Sweep YAML file")
    mc.add_argument("--out", required=True, help="Output CSV path")
    mc.add_argument("--seed", type=int, help="Override base_seed")
    mc.add_argument("--trials", type=int, help="Override n_trials")
    mc.add_argument("--method", choices=METHOD_CHOICES, help="Run only this method")
    mc.add_argument("--p-extra", type=int, help="Extra coefficients for MODEX/EPUMA")
    mc.add_argument("--success-threshold", type=float, help="Per-angle success bound (rad)")
    mc.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Worker threads")
    mc.add_argument("--timing", action="store_true", help="Fill the wall_time_ms column")

    e = sub.add_parser("estimate", help="Estimate DOAs from a snapshot file")
    e.add_argument("input", help="Snapshot text file")
    e.add_argument("--m", type=int, required=True, help="Sensor count")
    e.add_argument("--r", type=int, required=True, help="Source count")
    e.add_argument("--method", choices=METHOD_CHOICES, default="mode")
    e.add_argument("--p-extra", type=int, default=0)

    s = sub.add_parser("simulate", help="Write a snapshot file for a scenario")
    s.add_argument("--config", required=True, help="Scenario YAML file")
    s.add_argument("--out", required=True, help="Output snapshot file")
    s.add_argument("--seed", type=int, help="Override the scenario seed")
    return p.parse_args(argv)


def run_verify(args):
    banner(f"VERIFY: {args.trials} instances, seed {args.seed}")
    sizes = parse_sizes(args.sizes) if args.sizes else None
    rows, passed = cmd_verify(sizes, args.trials, args.seed, args.inject_fault)
    print(format_report(rows))
    if not passed:
        failed = [row["name"] for row in rows if not row["passed"]]
        raise PropertyViolation(f"tolerance exceeded in {', '.join(failed)}")
    return EXIT_OK


def run_mc(args):
    spec = apply_overrides(
        SweepSpec.from_yaml(args.config),
        seed=args.seed, trials=args.trials, method=args.method,
        p_extra=args.p_extra, success_threshold=args.success_threshold,
    )
    banner(f"MONTE CARLO: {len(spec.cells())} cells x {spec.n_trials} trials "
           f"x {len(spec.methods)} methods, {args.jobs} jobs")
    records = cmd_mc(spec, args.out, jobs=args.jobs, timing=args.timing)
    print(f"wrote {len(records)} rows to {args.out}")
    return EXIT_OK


def run_estimate(args):
    banner(f"ESTIMATE: {args.method.upper()} on {args.input}")
    print(format_estimate(cmd_estimate(args.input, args.m, args.r, args.method, args.p_extra)))
    return EXIT_OK


def run_simulate(args):
    scenario = load_scenario(args.config)
    if args.seed is not None:
        scenario = scenario.with_seed(args.seed)
    banner(f"SIMULATE: seed {scenario.seed}")
    snapshots = cmd_simulate(scenario, args.out)
    print(f"wrote {snapshot_summary(snapshots)} to {args.out}")
    return EXIT_OK


COMMANDS = {
    "verify": run_verify,
    "mc": run_mc,
    "estimate": run_estimate,
    "simulate": run_simulate,
}


def main(argv=None):
    args = parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except Exception as e:
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
