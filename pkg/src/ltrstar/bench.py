"""Benchmark grid runner and CSV summaries.

One CSV row per (scenario, planner, repeat, task, phase). Rows are flushed as
they complete so an interrupted run keeps what finished, then the file is
rewritten in sorted order so the artifact never depends on execution order.
All numeric cells are written with repr() (exact round-trip); the wall-clock
column is the only nondeterministic one.
"""

import csv
import io
import math
from dataclasses import dataclass, field

from .planner import run_task_sequence
from .scenario import load_scenario_file

CSV_COLUMNS = (
    "scenario", "planner", "seed", "task", "phase",
    "first_solution_time_s", "final_cost", "iterations", "collision_checks",
    "success",
)

PLANNERS = ("ltr", "lazyprm", "birrt")


@dataclass
class TaskRecord:
    scenario: str
    planner: str
    seed: int
    task: int
    phase: str
    first_solution_time_s: float = None
    final_cost: float = None
    iterations: int = 0
    collision_checks: int = 0
    success: bool = False

    def to_row(self):
        def num(x):
            return "" if x is None else repr(x)

        return [
            self.scenario, self.planner, str(self.seed), str(self.task), self.phase,
            num(self.first_solution_time_s), num(self.final_cost),
            str(self.iterations), str(self.collision_checks),
            "true" if self.success else "false",
        ]

    @classmethod
    def from_row(cls, row):
        def num(x):
            return None if x == "" else float(x)

        return cls(
            scenario=row["scenario"], planner=row["planner"], seed=int(row["seed"]),
            task=int(row["task"]), phase=row["phase"],
            first_solution_time_s=num(row["first_solution_time_s"]),
            final_cost=num(row["final_cost"]),
            iterations=int(row["iterations"]),
            collision_checks=int(row["collision_checks"]),
            success=row["success"] == "true",
        )


@dataclass
class BenchConfig:
    scenario_paths: list
    planners: list
    repeats: int
    seed_base: int = 0
    out: str = None
    first_solution_only: bool = False
    budget_iters: int = None     # overrides each scenario's max_iters
    workers: int = 1

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        for p in self.planners:
            if p not in PLANNERS:
                raise ValueError(f"unknown planner {p!r} (choose from {PLANNERS})")


def records_from_run(scenario_name, planner, seed, phase_records):
    out = []
    for rec in phase_records:
        o = rec.outcome
        out.append(TaskRecord(
            scenario=scenario_name, planner=planner, seed=seed,
            task=rec.task_index, phase=rec.phase,
            first_solution_time_s=None if o is None else o.first_solution_time_s,
            final_cost=None if o is None else o.final_cost,
            iterations=0 if o is None else o.iterations,
            collision_checks=0 if o is None else o.collision_checks,
            success=rec.success,
        ))
    return out


def _run_cell(args):
    """One (scenario, planner, seed) cell; module-level for worker pools."""
    scenario, planner, seed, first_solution_only, budget_iters = args
    phase_records = run_task_sequence(
        scenario, seed, planner=planner,
        first_solution_only=first_solution_only, max_iters=budget_iters,
    )
    return records_from_run(scenario.name, planner, seed, phase_records)


def run_benchmark(cfg, stream=None):
    """Run the planner x seed grid over every scenario; returns all TaskRecords.

    With cfg.out (or an explicit stream) rows stream out as cells complete and
    the final file is rewritten in sorted order, so worker parallelism never
    changes the artifact.
    """
    scenarios = [(path, load_scenario_file(path)) for path in cfg.scenario_paths]
    cells = [
        (scenario, planner, cfg.seed_base + repeat,
         cfg.first_solution_only, cfg.budget_iters)
        for _, scenario in scenarios
        for planner in cfg.planners
        for repeat in range(cfg.repeats)
    ]
    records = []
    sink = None
    owns_sink = False
    if stream is not None:
        sink = stream
    elif cfg.out is not None:
        sink = open(cfg.out, "w", newline="", encoding="utf-8")
        owns_sink = True
    writer = None
    if sink is not None:
        writer = csv.writer(sink)
        writer.writerow(CSV_COLUMNS)
        sink.flush()

    def emit(cell_records):
        records.extend(cell_records)
        if writer is not None:
            for rec in cell_records:
                writer.writerow(rec.to_row())
            sink.flush()

    try:
        if cfg.workers > 1:
            import multiprocessing

            with multiprocessing.Pool(cfg.workers) as pool:
                for cell_records in pool.imap_unordered(_run_cell, cells):
                    emit(cell_records)
        else:
            for cell in cells:
                emit(_run_cell(cell))
    finally:
        if owns_sink:
            sink.close()

    records.sort(key=lambda r: (r.scenario, r.planner, r.seed, r.task, r.phase))
    if cfg.out is not None and stream is None:
        with open(cfg.out, "w", newline="", encoding="utf-8") as fh:
            write_records(records, fh)
    return records


def write_records(records, stream):
    writer = csv.writer(stream)
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.to_row())


def records_to_csv(records):
    buf = io.StringIO()
    write_records(records, buf)
    return buf.getvalue()


def read_records(path_or_stream):
    if hasattr(path_or_stream, "read"):
        reader = csv.DictReader(path_or_stream)
        rows = list(reader)
    else:
        with open(path_or_stream, "r", newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            rows = list(reader)
    if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_COLUMNS:
        raise ValueError(f"CSV schema mismatch: expected columns {CSV_COLUMNS}")
    return [TaskRecord.from_row(r) for r in rows]


# ---------------------------------------------------------------------------
# summaries
# ---------------------------------------------------------------------------

def _mean(xs):
    return sum(xs) / len(xs)


def _std(xs):
    """Sample standard deviation (n-1); 0.0 for a single observation."""
    if len(xs) < 2:
        return 0.0
    m = _mean(xs)
    return math.sqrt(sum((x - m) ** 2 for x in xs) / (len(xs) - 1))


def _quantile(xs, q):
    """Linear-interpolation quantile (matches numpy's default)."""
    s = sorted(xs)
    if len(s) == 1:
        return s[0]
    pos = q * (len(s) - 1)
    lo = int(math.floor(pos))
    hi = int(math.ceil(pos))
    if lo == hi:
        return s[lo]
    return s[lo] + (pos - lo) * (s[hi] - s[lo])


_METRICS = (("time", "first_solution_time_s"), ("cost", "final_cost"),
            ("iters", "iterations"))


def summarize(records):
    """Per (planner, phase, task) stats over successful rows.

    Returns a list of dicts with n plus mean/std/median/q25/q75 for the
    time-to-first-solution, final cost and iteration count. Groups with no
    successful rows are omitted.
    """
    groups = {}
    for r in records:
        if not r.success:
            continue
        groups.setdefault((r.planner, r.phase, r.task), []).append(r)
    out = []
    for (planner, phase, task) in sorted(groups):
        rows = groups[(planner, phase, task)]
        entry = {"planner": planner, "phase": phase, "task": task, "n": len(rows)}
        for label, attr in _METRICS:
            xs = [float(getattr(r, attr)) for r in rows if getattr(r, attr) is not None]
            if not xs:
                continue
            entry[f"{label}_mean"] = _mean(xs)
            entry[f"{label}_std"] = _std(xs)
            entry[f"{label}_median"] = _quantile(xs, 0.5)
            entry[f"{label}_q25"] = _quantile(xs, 0.25)
            entry[f"{label}_q75"] = _quantile(xs, 0.75)
        out.append(entry)
    return out


SUMMARY_COLUMNS = ("planner", "phase", "task", "n") + tuple(
    f"{label}_{stat}" for label, _ in _METRICS
    for stat in ("mean", "std", "median", "q25", "q75")
)


def write_summary_csv(summary, stream):
    writer = csv.writer(stream)
    writer.writerow(SUMMARY_COLUMNS)
    for entry in summary:
        writer.writerow([
            "" if entry.get(c) is None else
            (entry[c] if isinstance(entry[c], str) else repr(entry[c]))
            for c in SUMMARY_COLUMNS
        ])


def format_first_last_table(summary):
    """Readable first-vs-last-task digest (mean +/- std), one line per group."""
    tasks = sorted({e["task"] for e in summary})
    if not tasks:
        return "(no successful rows)"
    shown = {tasks[0], tasks[-1]}
    lines = [f"{'planner':<10}{'phase':<8}{'task':<6}{'time (s)':<24}{'cost':<24}"]
    for e in summary:
        if e["task"] not in shown:
            continue
        t = f"{e.get('time_mean', float('nan')):.3f} ± {e.get('time_std', float('nan')):.3f}"
        c = f"{e.get('cost_mean', float('nan')):.3f} ± {e.get('cost_std', float('nan')):.3f}"
        lines.append(f"{e['planner']:<10}{e['phase']:<8}{e['task']:<6}{t:<24}{c:<24}")
    return "\n".join(lines)
