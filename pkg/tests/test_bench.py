import io
import json

import pytest

from ltrstar.bench import (
    BenchConfig,
    TaskRecord,
    read_records,
    records_to_csv,
    run_benchmark,
    summarize,
    write_summary_csv,
)

MINI = {
    "name": "mini",
    "bounds": {"lower": [0.0, 0.0], "upper": [6.0, 6.0]},
    "robot": {"kind": "point", "start": [5.0, 3.0]},
    "static_obstacles": [{"shape": "disc", "center": [3.0, 3.0], "radius": 0.7}],
    "objects": [
        {"id": "a",
         "shape": {"shape": "disc", "center": [0.0, 0.4], "radius": 0.12},
         "pose": {"xy": [1.0, 1.5], "theta": 0.0}},
        {"id": "b",
         "shape": {"shape": "disc", "center": [0.0, 0.4], "radius": 0.12},
         "pose": {"xy": [1.0, 4.5], "theta": 0.0}},
    ],
    "tasks": [
        {"object_id": "a", "target_pose": {"xy": [5.0, 1.5], "theta": 0.0}},
        {"object_id": "b", "target_pose": {"xy": [5.0, 4.5], "theta": 0.0}},
    ],
    "params": {"gamma": None, "step": 0.4, "resolution": 0.06,
               "budget_s": 1000000000.0, "max_iters": 400, "seed": 0,
               "lazyprm_cadence": 50},
}


@pytest.fixture()
def mini_path(tmp_path):
    p = tmp_path / "mini.json"
    p.write_text(json.dumps(MINI), encoding="utf-8")
    return str(p)


def test_row_count_formula(mini_path, tmp_path):
    out = tmp_path / "rows.csv"
    cfg = BenchConfig(scenario_paths=[mini_path], planners=["ltr", "birrt"],
                      repeats=3, seed_base=0, out=str(out))
    records = run_benchmark(cfg)
    # 1 scenario x 2 planners x 3 repeats x 2 tasks x 2 phases
    assert len(records) == 24
    assert all(r.success for r in records)
    again = read_records(str(out))
    assert len(again) == 24


def test_rerun_byte_identical_modulo_wall_clock(mini_path):
    cfg = BenchConfig(scenario_paths=[mini_path], planners=["ltr"], repeats=2)
    rows_a = run_benchmark(cfg)
    rows_b = run_benchmark(cfg)

    def strip_time(csv_text):
        lines = csv_text.splitlines()
        out = [lines[0]]
        for line in lines[1:]:
            cells = line.split(",")
            cells[5] = ""
            out.append(",".join(cells))
        return "\n".join(out)

    assert strip_time(records_to_csv(rows_a)) == strip_time(records_to_csv(rows_b))


def test_parallel_workers_same_artifact(mini_path):
    serial = BenchConfig(scenario_paths=[mini_path], planners=["ltr", "birrt"],
                         repeats=2)
    parallel = BenchConfig(scenario_paths=[mini_path], planners=["ltr", "birrt"],
                           repeats=2, workers=2)

    def strip_time(csv_text):
        lines = csv_text.splitlines()
        return [",".join(c if i != 5 else "" for i, c in enumerate(l.split(",")))
                for l in lines]

    a = run_benchmark(serial)
    b = run_benchmark(parallel)
    assert strip_time(records_to_csv(a)) == strip_time(records_to_csv(b))


def rec(planner="ltr", phase="pick", task=1, t=1.0, cost=5.0, ok=True, seed=0):
    return TaskRecord(scenario="s", planner=planner, seed=seed, task=task,
                      phase=phase, first_solution_time_s=t, final_cost=cost,
                      iterations=10, collision_checks=100, success=ok)


def test_summarize_constant_column():
    rows = [rec(seed=i, t=5.0, cost=5.0) for i in range(4)]
    (entry,) = summarize(rows)
    assert entry["time_mean"] == 5.0
    assert entry["time_std"] == 0.0
    assert entry["cost_median"] == 5.0


def test_summarize_sample_std():
    # hand computation: deviations +-1, sum of squares 2, /(n-1)=2, sqrt(2)
    rows = [rec(seed=0, cost=1.0), rec(seed=1, cost=3.0)]
    (entry,) = summarize(rows)
    assert entry["cost_mean"] == 2.0
    assert entry["cost_std"] == pytest.approx(2.0 ** 0.5, rel=1e-12)


def test_summarize_quartiles_match_numpy():
    import numpy as np

    vals = [3.0, 1.0, 4.0, 1.5, 9.0, 2.6, 5.3]
    rows = [rec(seed=i, cost=v) for i, v in enumerate(vals)]
    (entry,) = summarize(rows)
    assert entry["cost_median"] == pytest.approx(np.quantile(vals, 0.5), abs=0)
    assert entry["cost_q25"] == pytest.approx(np.quantile(vals, 0.25), abs=0)
    assert entry["cost_q75"] == pytest.approx(np.quantile(vals, 0.75), abs=0)


def test_summarize_omits_empty_groups():
    rows = [rec(ok=True), rec(phase="place", ok=False, seed=1)]
    summary = summarize(rows)
    assert len(summary) == 1
    assert summary[0]["phase"] == "pick"


def test_summary_csv_roundtrip_precision():
    rows = [rec(seed=i, cost=1.0 / 3.0 + i * 0.1, t=0.123456789123456789)
            for i in range(3)]
    summary = summarize(rows)
    buf = io.StringIO()
    write_summary_csv(summary, buf)
    lines = buf.getvalue().splitlines()
    header = lines[0].split(",")
    cells = lines[1].split(",")
    got = float(cells[header.index("cost_mean")])
    assert got == summary[0]["cost_mean"]


def test_csv_schema_mismatch_rejected(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("foo,bar\n1,2\n", encoding="utf-8")
    with pytest.raises(ValueError, match="schema"):
        read_records(str(p))


def test_bench_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(scenario_paths=[], planners=["ltr"], repeats=0)
    with pytest.raises(ValueError):
        BenchConfig(scenario_paths=[], planners=["quantum"], repeats=1)
