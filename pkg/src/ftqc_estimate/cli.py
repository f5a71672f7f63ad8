"""Command-line front end: ``ftqc-estimate <subcommand> ...``.

Exit status is 0 on success, 2 for usage or input errors and 3 when the
request is well formed but infeasible.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core_model import HardwareProfile, device_area
from .errors import InfeasibleError, InputError
from .factories import (calibrate_autoccz, calibrate_t_factory, load_factory_model,
                        per_state_budget)
from .io import (estimate_to_dict, factory_to_dict, format_table, load_scenario,
                 parse_duration, parse_fraction, sweep_to_dict, to_json, write_sweep_csv)
from .strategies import Strategy, estimate, min_qubits_for_runtime, runtime_for_qubit_budget
from .sweeps import log_grid, optimal_t_layer, sweep_code_cycle, sweep_physical_error

EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def _common(p: argparse.ArgumentParser, scenario=True, cc=True):
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--model-config", help="factory-constant JSON (default: $FTQC_MODEL_CONFIG)")
    if scenario:
        p.add_argument("--scenario", required=True, help="preset name or scenario JSON path")
        p.add_argument("--depth-fraction", help="measurement depth as a fraction, e.g. 1/100")
        p.add_argument("--strategy", choices=[s.value for s in Strategy], default="autoccz")
    if cc:
        p.add_argument("--cc", default="1us", help="code cycle time (e.g. 1e-6, 235us)")
    p.add_argument("--rt", help="reaction time override (default CC/4 + 10us)")
    p.add_argument("--p", type=float, default=1e-3, help="physical error rate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ftqc-estimate",
                                     description="Surface-code physical resource estimates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate one configuration")
    _common(p)
    p.add_argument("--factories", type=int, help="AutoCCZ factory count")
    p.add_argument("--units", type=int, help="GoSC unit count")

    p = sub.add_parser("min-qubits", help="fewest qubits meeting a target runtime")
    _common(p)
    p.add_argument("--target", required=True, help="target runtime (e.g. 3600, 1h, 10day)")

    p = sub.add_parser("max-speed", help="fastest configuration within a qubit budget")
    _common(p)
    p.add_argument("--qubits", type=float, required=True)

    p = sub.add_parser("sweep-cc", help="min qubits versus code cycle time")
    _common(p, cc=False)
    p.add_argument("--target", required=True)
    p.add_argument("--cc-min", default="1e-8")
    p.add_argument("--cc-max", default="1e-3")
    p.add_argument("--per-decade", type=int, default=60)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="CSV output path")

    p = sub.add_parser("sweep-error", help="min qubits versus physical error rate")
    _common(p)
    p.add_argument("--target", required=True)
    p.add_argument("--p-min", type=float, default=1e-5)
    p.add_argument("--p-max", type=float, default=9.9e-3)
    p.add_argument("--per-decade", type=int, default=60)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="CSV output path")

    p = sub.add_parser("optimize-depth", help="GoSC T-per-layer minimising qubits")
    _common(p, scenario=False)
    p.add_argument("--n", type=int, required=True, help="logical qubits")
    p.add_argument("--t-count", type=float, required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--max-t-layer", type=float)

    p = sub.add_parser("calibrate-factory", help="minimum-volume factory for a budget")
    _common(p, scenario=False, cc=False)
    p.add_argument("--kind", choices=["autoccz", "t"], default="autoccz")
    p.add_argument("--states", type=float, required=True, help="magic states required")
    p.add_argument("--budget", type=float, default=0.05, help="total distillation budget")
    p.add_argument("--levels", type=int, choices=[1, 2], default=1, help="T-factory levels")

    p = sub.add_parser("area", help="square device side length")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--qubits", type=float, required=True)
    p.add_argument("--density", type=float, required=True, help="area per qubit in m^2")
    return parser


def _profile(args, cc=None) -> HardwareProfile:
    return HardwareProfile(
        code_cycle_time=parse_duration(args.cc) if cc is None else cc,
        physical_error_rate=args.p,
        reaction_time=parse_duration(args.rt) if args.rt else None)


def _scenario(args):
    sc = load_scenario(args.scenario)
    spec = sc.logical
    if args.depth_fraction:
        spec = spec.with_depth_fraction(parse_fraction(args.depth_fraction))
    return sc, spec


def _run(args) -> dict:
    cmd = args.command
    if cmd == "area":
        return {"qubits_count": args.qubits, "area_per_qubit_m2": args.density,
                "side_length_m": device_area(args.qubits, args.density)}
    model = load_factory_model(args.model_config)
    if cmd == "calibrate-factory":
        budget = per_state_budget(args.budget, max(1, round(args.states)))
        if args.kind == "autoccz":
            design = calibrate_autoccz(args.p, budget, model)
        else:
            design = calibrate_t_factory(args.p, budget, args.levels, model)
        return {"per_state_budget_prob": budget, "factory": factory_to_dict(design)}
    if cmd == "optimize-depth":
        res = optimal_t_layer(args.n, int(args.t_count), _profile(args),
                              parse_duration(args.target), model=model,
                              max_t_layer=args.max_t_layer)
        return {"phase": res.phase.value, "t_layer_count": res.t_layer,
                "depth_ratio": res.depth_ratio, "estimate": estimate_to_dict(res.estimate)}

    sc, spec = _scenario(args)
    strategy = Strategy(args.strategy)
    if cmd == "estimate":
        count = args.units if strategy is Strategy.GOSC else args.factories
        return estimate_to_dict(estimate(spec, _profile(args), strategy, count, sc.budget, model))
    if cmd == "min-qubits":
        return estimate_to_dict(min_qubits_for_runtime(
            spec, _profile(args), parse_duration(args.target), strategy, sc.budget, model))
    if cmd == "max-speed":
        return estimate_to_dict(runtime_for_qubit_budget(
            spec, _profile(args), args.qubits, strategy, sc.budget, model))
    target = parse_duration(args.target)
    if cmd == "sweep-cc":
        template = _profile(args, cc=1e-6)
        grid = log_grid(parse_duration(args.cc_min), parse_duration(args.cc_max), args.per_decade)
        series = sweep_code_cycle(spec, template, grid, target, strategy, sc.budget, model,
                                  args.workers)
    else:
        grid = log_grid(args.p_min, args.p_max, args.per_decade)
        series = sweep_physical_error(spec, _profile(args), grid, target, strategy, sc.budget,
                                      model, args.workers)
    if args.out:
        with open(Path(args.out), "w", newline="") as fh:
            write_sweep_csv(series, fh)
    return sweep_to_dict(series)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = _run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"infeasible: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    print(to_json(result) if args.format == "json" else format_table(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
