import csv
import io
import json
import random

import pytest

from nbsearch import bench
from nbsearch.bench import (
    CSV_COLUMNS,
    ConfigError,
    ExperimentConfig,
    ExperimentResult,
    emit,
    emit_scatter,
    rows_from_json,
    run_experiment,
)
from nbsearch.domains import emit_map
from nbsearch.domains.grid import random_grid


def test_fixture_suite_all_costs_three():
    result = run_experiment(ExperimentConfig(domain="fixtures"))
    assert result.ok
    assert {r.cost for r in result.rows} == {"3"}
    assert len(result.rows) == 2 * 7


def test_pancake_trend_small():
    algs = ("nbs", "astar_f")

    def means(k):
        res = run_experiment(ExperimentConfig(domain="pancake", size=8, k=k, algorithms=algs, count=12))
        return {a["algorithm"]: a["expanded"] for a in res.aggregates()}

    strong, weak = means(0), means(2)
    assert strong["astar_f"] < strong["nbs"]
    assert weak["nbs"] < weak["astar_f"]


def test_analysis_ratios():
    res = run_experiment(ExperimentConfig(domain="random", size=60, count=8, analyze=True))
    assert res.ok
    nbs = [r for r in res.rows if r.algorithm == "nbs"]
    assert all(r.vc_size is not None and r.ratio <= 2.0 for r in nbs)
    assert len(res.scatter) == 8


def test_caps_mark_rows_unsolved():
    cfg = ExperimentConfig(domain="tiles", count=3, cap_expansions=5, algorithms=("nbs", "astar_f"))
    res = run_experiment(cfg)
    assert res.ok
    assert not any(r.solved for r in res.rows)
    agg = res.aggregates()
    assert all(a["unsolved"] == 3 and a["expanded"] is None for a in agg)


def test_oracle_verification():
    res = run_experiment(ExperimentConfig(domain="hanoi", size=6, count=3, verify_oracle=True))
    assert res.ok


def test_cost_mismatch_is_a_failure(monkeypatch):
    real = bench.ALGORITHMS["astar_f"]

    def broken(space, limits):
        r = real(space, limits)
        r.cost += 1
        return r

    monkeypatch.setitem(bench.ALGORITHMS, "astar_f", broken)
    res = run_experiment(ExperimentConfig(domain="random", count=2, algorithms=("nbs", "astar_f")))
    assert not res.ok and "mismatch" in res.failures[0]


@pytest.mark.parametrize(
    "kwargs",
    [
        {"domain": "chess"},
        {"algorithms": ("nbs", "dfs")},
        {"algorithms": ()},
        {"count": 0},
        {"cap_expansions": 0},
        {"cap_seconds": -1.0},
        {"fmt": "xml"},
        {"domain": "tiles", "heuristic": "gap"},
        {"domain": "grid", "scen_file": "x.scen"},
        {"domain": "pancake", "instances_file": "/nonexistent"},
    ],
)
def test_config_errors(kwargs):
    with pytest.raises(ConfigError):
        ExperimentConfig(**kwargs)


class TestEmit:
    def test_header_only_csv(self):
        out = emit(ExperimentResult(), "csv").decode()
        assert out == ",".join(CSV_COLUMNS) + "\n"

    def test_json_round_trip(self):
        res = run_experiment(ExperimentConfig(domain="random", count=1, algorithms=("nbs",)))
        rows = rows_from_json(emit(res, "json"))
        assert rows == res.rows

    def test_markdown_rows(self):
        res = run_experiment(ExperimentConfig(domain="random", count=2, algorithms=("nbs", "mme")))
        lines = emit(res, "markdown").decode().strip().splitlines()
        assert len(lines) == 2 + 2

    def test_unknown_format(self):
        with pytest.raises(ConfigError):
            emit(ExperimentResult(), "yaml")

    def test_deterministic_csv(self):
        cfg = ExperimentConfig(domain="maze", count=3, seed=5)
        a = emit(run_experiment(cfg), "csv", timing=False)
        b = emit(run_experiment(cfg), "csv", timing=False)
        assert a == b
        header = next(csv.reader(io.StringIO(a.decode())))
        assert "wall_time" not in header

    def test_scatter_csv(self):
        res = run_experiment(ExperimentConfig(domain="random", count=3))
        lines = emit_scatter(res).decode().splitlines()
        assert lines[0] == "instance,min_baseline_necessary,nbs_necessary"
        assert len(lines) == 4


def test_instances_file(tmp_path):
    f = tmp_path / "pancakes.txt"
    f.write_text("# two stacks\n3 1 2 5 4\n5,4,3,2,1\n")
    res = run_experiment(ExperimentConfig(domain="pancake", instances_file=str(f), count=10, verify_oracle=True))
    assert res.ok and len({r.instance for r in res.rows}) == 2


def test_map_file(tmp_path):
    grid = random_grid(random.Random(1), 20, 20, 0.2)
    f = tmp_path / "r.map"
    f.write_text(emit_map(grid))
    res = run_experiment(ExperimentConfig(domain="grid", map_file=str(f), count=4, verify_oracle=True))
    assert res.ok and len(res.rows) == 4 * 7


def test_json_is_array_of_objects():
    res = run_experiment(ExperimentConfig(domain="random", count=1, algorithms=("nbs",)))
    data = json.loads(emit(res, "json"))
    assert isinstance(data, list) and set(data[0]) == set(CSV_COLUMNS)
