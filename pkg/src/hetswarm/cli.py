"""Command line entry point.

    hetswarm run <scenario.toml>
    hetswarm compare <hetero.toml> <homo.toml> [--failures F]
    hetswarm resilience <scenario.toml> --failures F
    hetswarm metrics <scenario.toml>
    hetswarm advise "<mission characteristic>"

Exit codes: 0 ok, 2 parse error, 3 validation error, 4 infeasible task
allocation, 5 runtime error. Each command writes into its own subdirectory
of ``--out`` so concurrent commands never share files.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from hetswarm.allocation import InfeasibleError, assign_tasks, build_costs
from hetswarm.heterogeneity import total_heterogeneity
from hetswarm.model import Scenario
from hetswarm.report import (
    emit_comparison,
    emit_resilience,
    emit_series,
    summarize,
    verdict_line,
)
from hetswarm.resilience import ADVICE, advise, compare_resilience, resilience_index
from hetswarm.scenario_file import ScenarioParseError, parse_failures_file, parse_scenario_file
from hetswarm.sim.kernel import ScenarioError, Simulation, run_scenario

EXIT_PARSE, EXIT_VALIDATION, EXIT_INFEASIBLE, EXIT_RUNTIME = 2, 3, 4, 5

DEFAULT_ENSEMBLE = 16


def _load(path: str, args: argparse.Namespace) -> Scenario:
    s = parse_scenario_file(path)
    if args.seed is not None:
        s = dataclasses.replace(s, seed=args.seed)
    return s


def _starts(s: Scenario):
    sim = Simulation(s)
    return [st.position for st in sim.states]


def _tasks(s: Scenario):
    if not s.tasks:
        return None
    ts = build_costs(s.agents, s.tasks, s.world, _starts(s), s.task_capacity)
    return ts, assign_tasks(ts)


def _outdir(args: argparse.Namespace, name: str) -> Path:
    out = Path(args.out) / name
    out.mkdir(parents=True, exist_ok=True)
    return out


def _finish(text: str, out: Path) -> None:
    (out / "summary.txt").write_text(text, encoding="utf-8", newline="\n")
    sys.stdout.write(text)


def cmd_run(args: argparse.Namespace) -> None:
    s = _load(args.scenario, args)
    ms = run_scenario(s)
    out = _outdir(args, f"run-{s.id}-seed{s.seed}")
    emit_series(ms, out)
    text = summarize(s, total_heterogeneity(s.agents, s.weights, s.ranges), _tasks(s), [ms])
    _finish(text, out)


def cmd_metrics(args: argparse.Namespace) -> None:
    s = _load(args.scenario, args)
    out = _outdir(args, f"metrics-{s.id}-seed{s.seed}")
    text = summarize(s, total_heterogeneity(s.agents, s.weights, s.ranges), _tasks(s))
    _finish(text, out)


def cmd_compare(args: argparse.Namespace) -> None:
    hetero = _load(args.hetero, args)
    homo = _load(args.homo, args)
    a, b = run_scenario(hetero), run_scenario(homo)
    out = _outdir(args, f"compare-{hetero.id}-vs-{homo.id}-seed{hetero.seed}")
    emit_series(a, out)
    emit_series(b, out)
    emit_comparison(a, b, out)
    cmp = None
    if args.failures:
        failures = parse_failures_file(args.failures)
        cmp = compare_resilience(hetero, homo, failures, args.ensemble)
        emit_resilience(cmp.hetero, out, "resilience_hetero.csv")
        emit_resilience(cmp.homo, out, "resilience_homo.csv")
    parts = []
    for s, ms in ((hetero, a), (homo, b)):
        parts.append(
            summarize(
                s,
                total_heterogeneity(s.agents, s.weights, s.ranges),
                series=[ms],
                resilience=[cmp.hetero if s is hetero else cmp.homo] if cmp else (),
            )
        )
    if cmp is not None:
        parts.append(verdict_line(cmp) + "\n")
    _finish("\n".join(parts), out)


def cmd_resilience(args: argparse.Namespace) -> None:
    s = _load(args.scenario, args)
    failures = parse_failures_file(args.failures)
    report = resilience_index(s, failures, args.ensemble)
    out = _outdir(args, f"resilience-{s.id}-seed{s.seed}")
    emit_resilience(report, out, "resilience.csv")
    _finish(summarize(s, resilience=[report]), out)


def cmd_advise(args: argparse.Namespace) -> None:
    sys.stdout.write(f"{advise(args.characteristic)}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hetswarm", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    common.add_argument("--ensemble", type=int, default=DEFAULT_ENSEMBLE,
                        help="ensemble size K for stochastic runs (default %(default)s)")
    common.add_argument("--out", default="out", help="output directory (default %(default)s)")

    p = sub.add_parser("run", parents=[common], help="run one scenario")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", parents=[common], help="run a hetero/homo pair")
    p.add_argument("hetero")
    p.add_argument("homo")
    p.add_argument("--failures", help="failures file; adds the resilience verdict")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("resilience", parents=[common], help="resilience index of one scenario")
    p.add_argument("scenario")
    p.add_argument("--failures", required=True)
    p.set_defaults(func=cmd_resilience)

    p = sub.add_parser("metrics", parents=[common], help="heterogeneity and task assignment")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("advise", help="recommended heterogeneity for a mission characteristic")
    p.add_argument("characteristic", help="one of: " + "; ".join(ADVICE))
    p.set_defaults(func=cmd_advise)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ScenarioError as exc:
        print("validation failed:", file=sys.stderr)
        for v in exc.violations:
            print(f"  - {v}", file=sys.stderr)
        return EXIT_VALIDATION
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except KeyError as exc:
        # unknown advise characteristic
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:  # noqa: BLE001 - any other failure is a runtime error
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return 0


if __name__ == "__main__":
    sys.exit(main())
