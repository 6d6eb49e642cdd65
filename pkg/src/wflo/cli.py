"""Command-line entry point: ``wflo <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from .harness import analysis, fixtures
from .harness.experiment import METHODS, ExperimentConfig, enumerate_degenerate, run_experiment, run_seeds, solve_once
from .harness.io import read_powers, write_heatmap_csv, write_json, write_records
from .vqe import AnsatzSpec, dea_check, random_parameters

_FLAG_FIELDS = {
    "l_grid": "l_grid",
    "m": "m",
    "lambda1": "lambda1",
    "alpha": "cvar_alpha",
    "shots": "shots",
    "layers": "layers",
    "runs": "num_runs",
    "seed": "master_seed",
    "method": "method",
    "workers": "workers",
    "max_evals": "max_evals",
    "sweeps": "sa_sweeps",
}


def _problem_flags(p: argparse.ArgumentParser, method: bool = True) -> None:
    p.add_argument("--config", type=Path, help="JSON experiment config; flags override it")
    p.add_argument("--l-grid", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--lambda1", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", type=Path, default=Path("."))
    if method:
        p.add_argument("--method", choices=METHODS)
        p.add_argument("--alpha", type=float)
        p.add_argument("--shots", type=int)
        p.add_argument("--layers", type=int)
        p.add_argument("--max-evals", type=int)
        p.add_argument("--sweeps", type=int)
        p.add_argument("--workers", type=int)
        p.add_argument("--timing", action="store_true", help="also write wall-clock timings.json")


def _config(args) -> ExperimentConfig:
    cfg = ExperimentConfig.load(args.config) if getattr(args, "config", None) else ExperimentConfig()
    overrides = {}
    for flag, name in _FLAG_FIELDS.items():
        value = getattr(args, flag, None)
        if value is not None:
            overrides[name] = value
    return replace(cfg, **overrides).validate()


def cmd_build_qubo(args) -> int:
    cfg = _config(args)
    write_json(args.out / "qubo.json", cfg.problem().to_dict())
    return 0


def cmd_solve(args) -> int:
    cfg = replace(_config(args), num_runs=1)
    record = solve_once(cfg, 0, run_seeds(cfg.master_seed, 1)[0])
    write_records(args.out, [record], timing=args.timing)
    print(record.selected_layout or "no feasible layout", record.power_kW)
    return 0


def cmd_farm(args) -> int:
    cfg = _config(args)
    records = run_experiment(cfg)
    write_records(args.out, records, timing=args.timing)
    best, _ = enumerate_degenerate(cfg) if cfg.l_grid**2 <= 24 else (None, None)
    summary = {"config": cfg.to_dict(), "failures": sum(not r.succeeded for r in records)}
    powers = [r.power_kW for r in records if r.succeeded]
    if powers:
        summary["box"] = analysis.box_stats(powers)
    if best:
        pct = analysis.percent_of_optimal(records, best)
        summary["optimal_power_kW"] = best
        summary["percent_of_optimal"] = pct.percent
    write_json(args.out / "summary.json", summary)
    print(f"{len(records)} runs, {summary['failures']} failed, mean power {np.mean(powers) if powers else float('nan'):.2f}")
    return 0


def cmd_enumerate(args) -> int:
    cfg = _config(args)
    value, layouts = enumerate_degenerate(cfg)
    write_json(args.out / "optimal.json", {"l_grid": cfg.l_grid, "m": cfg.m, "power_kW": value, "layouts": layouts})
    print(f"{len(layouts)} optimal layouts at {value:.2f} kW")
    return 0


def cmd_heatmap(args) -> int:
    cfg = _config(args)
    if args.records:
        layouts = [
            d["selected_layout"]
            for d in json.loads(args.records.read_text())
            if d.get("selected_layout")
        ]
    else:
        _, layouts = enumerate_degenerate(cfg)
    heat = analysis.mean_placement(layouts, cfg.geometry)
    write_heatmap_csv(args.out / "heatmap.csv", heat.mean_placement)
    print(np.array2string(heat.mean_placement, precision=3))
    return 0


def cmd_bench(args) -> int:
    base = _config(args)
    points = []
    rows = []
    for l in args.l_grids:
        cfg = replace(base, l_grid=l).validate()
        seeds = run_seeds(cfg.master_seed, args.repeats)
        times = []
        for k, s in enumerate(seeds):
            t0 = time.perf_counter()
            solve_once(cfg, k, s)
            times.append(time.perf_counter() - t0)
        mean = float(np.mean(times))
        points.append((l * l, mean))
        rows.append({"l_grid": l, "volume": l * l, "mean_seconds": mean, "seconds": times})
    fit = analysis.fit_scaling(points)
    write_json(args.out / "scaling.json", {"method": base.method, "timings": rows, "fit": fit.to_dict()})
    print(f"time ~ V^{fit.slope:.3f}, intercept {fit.intercept:.3f} (log10)")
    return 0


def cmd_dea(args) -> int:
    spec = AnsatzSpec(args.qubits, args.layers, args.axes)
    theta = random_parameters(spec, np.random.default_rng(args.seed))
    verdicts = dea_check(spec, theta)
    write_json(
        args.out / "dea.json",
        {
            "num_qubits": spec.num_qubits,
            "num_layers": spec.num_layers,
            "rotation_axes": spec.rotation_axes,
            "theta": theta,
            "verdicts": [{"parameter": k, "independent": ok} for k, ok in verdicts],
        },
    )
    redundant = [k for k, ok in verdicts if not ok]
    print(f"{len(verdicts) - len(redundant)} independent, redundant: {redundant or 'none'}")
    return 0


def cmd_stats(args) -> int:
    if args.input:
        powers = read_powers(args.input)
    else:
        powers = fixtures.cobyla_cvar_samples(args.fixture)
    ok = [p for p in powers if p is not None]
    if not ok:
        print("no successful runs", file=sys.stderr)
        return 1
    pct = analysis.percent_of_optimal(powers, args.optimal)
    out = {"percent_of_optimal": pct.percent, "failures": pct.failures, "box": analysis.box_stats(ok)}
    write_json(args.out / "stats.json", out)
    print(f"mean {pct.mean_power:.2f} kW, {pct.percent:.2f}% of optimal over {pct.successes} runs")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wflo", description="Wind-farm layout QUBO and CVaR-VQE experiments")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-qubo", help="write qubo.json")
    _problem_flags(p, method=False)
    p.set_defaults(func=cmd_build_qubo)

    p = sub.add_parser("solve", help="one seeded solve")
    _problem_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("farm", help="multi-run experiment")
    _problem_flags(p)
    p.add_argument("--runs", type=int)
    p.set_defaults(func=cmd_farm)

    p = sub.add_parser("enumerate-optimal", help="all optimal layouts to optimal.json")
    _problem_flags(p, method=False)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("heatmap", help="mean placement to heatmap.csv")
    _problem_flags(p, method=False)
    p.add_argument("--records", type=Path, help="records.json to average instead of the optimal set")
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("bench", help="timing sweep and power-law fit")
    _problem_flags(p)
    p.add_argument("--l-grids", type=int, nargs="+", default=[2, 3, 4])
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dea-check", help="parameter redundancy of the ansatz")
    p.add_argument("--qubits", type=int, default=2)
    p.add_argument("--layers", type=int)
    p.add_argument("--axes", default="yx")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=Path("."))
    p.set_defaults(func=cmd_dea)

    p = sub.add_parser("stats", help="summary statistics of selected powers")
    p.add_argument("--input", type=Path, help="records.json, JSON list or CSV of powers")
    p.add_argument("--fixture", choices=["initial_36", "extended_284"], default="initial_36")
    p.add_argument("--optimal", type=float, default=2304.0)
    p.add_argument("--out", type=Path, default=Path("."))
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"wflo {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
