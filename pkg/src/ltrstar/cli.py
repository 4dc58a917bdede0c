"""`plan` command line: run benchmarks, summarize CSVs, export the graph.

Exit codes: 0 success, 1 configuration error, 2 scenario error.
"""

import argparse
import sys

from .bench import (
    BenchConfig,
    PLANNERS,
    format_first_last_table,
    read_records,
    run_benchmark,
    summarize,
    write_summary_csv,
)
from .planner import PlannerState, run_task_sequence
from .scenario import ScenarioError, load_scenario_file


def _build_parser():
    parser = argparse.ArgumentParser(prog="plan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a planner/seed benchmark grid")
    run.add_argument("--scenario", action="append", required=True,
                     help="scenario JSON path (repeatable)")
    run.add_argument("--planner", action="append", choices=PLANNERS, required=True,
                     help="planner to run (repeatable)")
    run.add_argument("--repeats", type=int, default=1)
    run.add_argument("--seed", type=int, default=0, help="base seed; repeat i uses seed+i")
    run.add_argument("--budget-iters", type=int, default=None,
                     help="override each scenario's per-phase iteration cap")
    run.add_argument("--first-solution-only", action="store_true",
                     help="return each phase at its first solution")
    run.add_argument("--workers", type=int, default=1,
                     help="parallel worker processes (rows are re-sorted at the end)")
    run.add_argument("--out", required=True, help="output CSV path")

    summ = sub.add_parser("summarize", help="summarize a benchmark CSV")
    summ.add_argument("--in", dest="input", required=True, help="benchmark CSV path")
    summ.add_argument("--out", default=None, help="write full summary CSV here")

    export = sub.add_parser("export-graph", help="dump the experience graph after a run")
    export.add_argument("--scenario", required=True)
    export.add_argument("--seed", type=int, default=0)
    export.add_argument("--planner", choices=("ltr", "lazyprm"), default="ltr")
    export.add_argument("--out", required=True, help="edge-list output path")
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    try:
        if args.command == "run":
            cfg = BenchConfig(
                scenario_paths=args.scenario,
                planners=args.planner,
                repeats=args.repeats,
                seed_base=args.seed,
                out=args.out,
                first_solution_only=args.first_solution_only,
                budget_iters=args.budget_iters,
                workers=args.workers,
            )
        elif args.command == "summarize":
            pass
    except ValueError as exc:
        print(f"plan: {exc}", file=sys.stderr)
        return 1

    try:
        if args.command == "run":
            records = run_benchmark(cfg)
            ok = sum(1 for r in records if r.success)
            print(f"wrote {len(records)} rows ({ok} successful) to {cfg.out}")
        elif args.command == "summarize":
            records = read_records(args.input)
            summary = summarize(records)
            print(format_first_last_table(summary))
            if args.out:
                with open(args.out, "w", newline="", encoding="utf-8") as fh:
                    write_summary_csv(summary, fh)
                print(f"full summary written to {args.out}")
        else:
            scenario = load_scenario_file(args.scenario)
            state = PlannerState.fresh(scenario.world.config_dim())
            run_task_sequence(scenario, args.seed, planner=args.planner, state=state)
            with open(args.out, "w", encoding="utf-8") as fh:
                state.g.export_edge_list(fh)
            print(f"experience graph ({state.g.size} vertices, "
                  f"{state.g.num_edges} edges) written to {args.out}")
    except ScenarioError as exc:
        print(f"plan: scenario error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"plan: scenario error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"plan: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
