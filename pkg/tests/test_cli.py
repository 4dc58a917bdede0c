import json

import pytest

from ltrstar.cli import main

from test_bench import MINI


@pytest.fixture()
def mini_path(tmp_path):
    p = tmp_path / "mini.json"
    p.write_text(json.dumps(MINI), encoding="utf-8")
    return str(p)


def test_run_and_summarize(mini_path, tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code = main(["run", "--scenario", mini_path, "--planner", "ltr",
                 "--planner", "birrt", "--repeats", "2", "--seed", "7",
                 "--out", str(out)])
    assert code == 0
    assert "16 rows" in capsys.readouterr().out

    summary_out = tmp_path / "summary.csv"
    code = main(["summarize", "--in", str(out), "--out", str(summary_out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "ltr" in text and "birrt" in text
    assert summary_out.exists()


def test_first_solution_only_flag(mini_path, tmp_path):
    out = tmp_path / "fso.csv"
    code = main(["run", "--scenario", mini_path, "--planner", "ltr",
                 "--first-solution-only", "--repeats", "1", "--out", str(out)])
    assert code == 0


def test_budget_iters_override(mini_path, tmp_path):
    out = tmp_path / "b.csv"
    code = main(["run", "--scenario", mini_path, "--planner", "birrt",
                 "--budget-iters", "50", "--out", str(out)])
    assert code == 0
    text = out.read_text(encoding="utf-8")
    # iterations column capped at the override
    for line in text.splitlines()[1:]:
        if line:
            assert int(line.split(",")[7]) <= 50


def test_missing_scenario_exit_2(tmp_path):
    code = main(["run", "--scenario", str(tmp_path / "absent.json"),
                 "--planner", "ltr", "--out", str(tmp_path / "x.csv")])
    assert code == 2


def test_invalid_scenario_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"name\": 3}", encoding="utf-8")
    code = main(["run", "--scenario", str(bad), "--planner", "ltr",
                 "--out", str(tmp_path / "x.csv")])
    assert code == 2


def test_bad_config_exit_1(mini_path, tmp_path):
    code = main(["run", "--scenario", mini_path, "--planner", "ltr",
                 "--repeats", "0", "--out", str(tmp_path / "x.csv")])
    assert code == 1


def test_export_graph(mini_path, tmp_path):
    out = tmp_path / "graph.txt"
    code = main(["export-graph", "--scenario", mini_path, "--seed", "3",
                 "--out", str(out)])
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# epoch")
    kinds = {l.split()[0] for l in lines[1:]}
    assert kinds == {"v", "e"}
    # vertex lines then edge lines, both non-empty
    assert any(l.startswith("v ") for l in lines)
    assert any(l.startswith("e ") for l in lines)
