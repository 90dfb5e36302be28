"""Command-line entry points.

Subcommands: simulate (emit sample and optional snapshot CSVs),
estimate (single-sample contrast or mixed estimate), reproduce (full
Monte-Carlo plan for a scenario), validate (model summability and
identity-constraint checks).  Exit codes: 0 success, 2 configuration
error, 3 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .contrast import identity_residual, select_theta, write_contrast_csv
from .errors import ConfigurationError, DataError
from .experiments import ExperimentPlan, run_plan
from .mixed_estimator import estimate_mixed, write_mixed_csv
from .periodogram import (
    fdft,
    model_table,
    periodogram_scale,
    write_spectral_csv,
)
from .scenarios import load_scenario, paper_scale, preset, preset_names
from .simulator import simulate_sample, write_sample_csv, write_snapshot_csv
from .spectral_model import validate_summability

IDENTITY_TOLERANCE = 1e-6
IDENTITY_NODES = 20_001


def _resolve_scenario(ref: str, seed=None, use_paper_scale=False):
    if Path(ref).exists():
        spec = json.loads(Path(ref).read_text())
    elif ref in preset_names():
        spec = preset(ref)
    else:
        raise ConfigurationError(
            f"scenario {ref!r} is neither a file nor one of {preset_names()}"
        )
    if seed is not None:
        spec["seed"] = int(seed)
    if use_paper_scale:
        spec = paper_scale(spec)
    return load_scenario(spec)


def _cmd_simulate(args) -> int:
    scenario = _resolve_scenario(args.scenario, args.seed)
    t = args.t or scenario.t_list[0]
    sample = simulate_sample(scenario.sim_config(t, args.replication))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    sample_path = out / f"{scenario.name}_T{t}_rep{args.replication}_sample.csv"
    write_sample_csv(sample, sample_path)
    print(sample_path)
    if args.snapshot_times:
        times = [int(v) for v in args.snapshot_times.split(",")]
        snap_path = out / f"{scenario.name}_T{t}_rep{args.replication}_snapshot.csv"
        write_snapshot_csv(sample, scenario.model.pole, times, snap_path)
        print(snap_path)
    return 0


def _cmd_estimate(args) -> int:
    scenario = _resolve_scenario(args.scenario, args.seed)
    t = args.t or scenario.t_list[0]
    sample = simulate_sample(scenario.sim_config(t, args.replication))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{scenario.name}_T{t}_rep{args.replication}"
    ptable = periodogram_scale(fdft(sample))
    periodogram_path = out / f"{stem}_periodogram.csv"
    write_spectral_csv(ptable, periodogram_path)
    print(periodogram_path)
    if scenario.kind == "mixed":
        estimate = estimate_mixed(
            sample,
            scenario.model,
            scenario.contrast_config,
            scenario.srd_set,
            scenario.window,
        )
        mixed_path = out / f"{stem}_mixed.csv"
        write_mixed_csv(estimate, mixed_path)
        print(mixed_path)
        return 0
    lrd = tuple(scenario.model.lrd_set)
    report = select_theta(ptable, scenario.model, scenario.contrast_config, scales=lrd)
    contrast_path = out / f"{stem}_contrast.csv"
    write_contrast_csv(report, contrast_path)
    print(contrast_path)
    density_path = out / f"{stem}_model_density.csv"
    write_spectral_csv(
        model_table(scenario.model, report.selected, t, scales=lrd), density_path
    )
    print(density_path)
    return 0


def _cmd_reproduce(args) -> int:
    scenario = _resolve_scenario(args.scenario, args.seed, args.paper_scale)
    plan = ExperimentPlan(scenario=scenario, out_dir=Path(args.out))
    summaries = run_plan(plan, workers=args.workers)
    for (t, r), summary in sorted(summaries.items()):
        print(f"{scenario.name} T={t} R={r}: {len(summary.elapsed)} replications")
    return 0


def _cmd_validate(args) -> int:
    scenario = _resolve_scenario(args.scenario, args.seed)
    model = scenario.model
    report = validate_summability(model)
    exponent = "n/a" if report.tail_exponent is None else f"{report.tail_exponent:.3f}"
    print(f"summability: tail exponent {exponent}, flagged={report.flagged}")
    if report.flagged:
        raise ConfigurationError("variance sequence decays too slowly to sum")
    worst = 0.0
    checks = 0
    lrd = tuple(model.lrd_set)
    for theta in scenario.contrast_config.candidates:
        for n in lrd:
            residual = abs(
                identity_residual(
                    model, theta, scenario.contrast_config, n, nodes=IDENTITY_NODES
                )
            )
            worst = max(worst, residual)
            checks += 1
    print(f"identity: max residual {worst:.3e} over {checks} checks")
    if worst > IDENTITY_TOLERANCE:
        raise ConfigurationError(
            f"identity constraint violated: residual {worst:.3e}"
        )
    print("validate: ok")
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphlrd",
        description="Simulation and spectral estimation for long-range dependent "
        "functional time series on the sphere",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario_positional=False):
        if scenario_positional:
            p.add_argument("scenario", help="preset name or scenario JSON path")
        else:
            p.add_argument("--scenario", required=True,
                           help="preset name or scenario JSON path")
        p.add_argument("--seed", type=int, default=None,
                       help="override the scenario master seed")
        p.add_argument("--out", default="sphlrd-out", help="output directory")

    sim = sub.add_parser("simulate", help="emit sample and snapshot CSVs")
    common(sim)
    sim.add_argument("--t", type=int, default=None, help="sample size")
    sim.add_argument("--replication", type=int, default=0)
    sim.add_argument("--snapshot-times", default=None,
                     help="comma-separated time indices for field snapshots")
    sim.set_defaults(func=_cmd_simulate)

    est = sub.add_parser("estimate", help="single-sample contrast or mixed estimate")
    common(est)
    est.add_argument("--t", type=int, default=None, help="sample size")
    est.add_argument("--replication", type=int, default=0)
    est.set_defaults(func=_cmd_estimate)

    rep = sub.add_parser("reproduce", help="run a scenario's full Monte-Carlo plan")
    common(rep, scenario_positional=True)
    rep.add_argument("--workers", type=int, default=1)
    rep.add_argument("--paper-scale", action="store_true",
                     help="use the published (T, R) grid instead of desk scale")
    rep.set_defaults(func=_cmd_reproduce)

    val = sub.add_parser("validate", help="summability and identity checks")
    common(val)
    val.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
