"""CLI subcommands: round trips, determinism, exit codes, resume."""

import json
import subprocess
import sys

import pytest

from spanorm.cli import main, run_experiment
from spanorm.extremal import named_girth_graph
from spanorm.graph_core import format_edge_list, parse_edge_list


@pytest.fixture
def petersen_file(tmp_path):
    path = tmp_path / "pet.edges"
    path.write_text(format_edge_list(named_girth_graph("petersen")))
    return path


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.edges"
    path.write_text("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    return path


def run_cli(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr().out
    return code, out


class TestSubcommands:
    def test_greedy_round_trip(self, petersen_file, tmp_path, capsys):
        out_path = tmp_path / "h.edges"
        code, out = run_cli(
            ["greedy", "--input", petersen_file, "--stretch", 3, "--output", out_path],
            capsys,
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["m_out"] == 15 and summary["girth"] == 5
        h = parse_edge_list(out_path.read_text())
        assert h == named_girth_graph("petersen")

    def test_norm(self, k4_file, capsys):
        code, out = run_cli(["norm", "--input", k4_file, "--p", "1,2,inf"], capsys)
        assert code == 0
        norms = json.loads(out)["norms"]
        assert norms["1"] == 12.0 and norms["2"] == 6.0 and norms["inf"] == 3.0

    def test_lb_exact_certificate(self, capsys):
        code, out = run_cli(
            ["lb", "--t", 3, "--p", 2, "--lambda", 1, "--exact", "--certificate"],
            capsys,
        )
        assert code == 0
        report = json.loads(out)
        assert report["ell_exact"] == {"num": 1, "den": 2}
        assert report["verified"] is True
        assert report["lcr"] == {"L": 1, "C": 1, "R": 1, "skew": "none"}

    def test_decompose(self, petersen_file, capsys):
        code, out = run_cli(["decompose", "--input", petersen_file, "--k", 3], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["covered"] is True

    def test_oracle_k4(self, k4_file, capsys):
        code, out = run_cli(["oracle", "--input", k4_file, "--stretch", 3, "--p", 2], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["optimum_norm"] == pytest.approx(10**0.5)
        assert report["greedy_ratio"] == pytest.approx(1.2**0.5)

    def test_verify_clean(self, petersen_file, capsys):
        code, out = run_cli(["verify", "--input", petersen_file, "--stretch", 3], capsys)
        assert code == 0
        assert json.loads(out)["failed"] == []

    def test_verify_corrupted_spanner(self, tmp_path, capsys):
        g = named_girth_graph("petersen")
        gpath = tmp_path / "g.edges"
        gpath.write_text(format_edge_list(g))
        broken = g.subgraph(g.edges[:-1])  # drop one edge: stretch fails
        hpath = tmp_path / "h.edges"
        hpath.write_text(format_edge_list(broken))
        code, out = run_cli(
            ["verify", "--input", gpath, "--stretch", 3, "--spanner", hpath], capsys
        )
        assert code == 1
        assert "stretch" in json.loads(out)["failed"]

    def test_usage_error_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["lb", "--t", "not_an_int"])
        assert exc.value.code == 2

    def test_gen_deterministic(self, tmp_path, capsys):
        args = [
            "gen", "--family", "lp",
            "--params", '{"t":3,"p":"2","lambda":"1","n":256}',
            "--seed", 5,
        ]
        code, _ = run_cli(args + ["--out", tmp_path / "a"], capsys)
        assert code == 0
        code, _ = run_cli(args + ["--out", tmp_path / "b"], capsys)
        assert code == 0
        assert (tmp_path / "a.spanner.edges").read_text() == (
            tmp_path / "b.spanner.edges"
        ).read_text()
        assert (tmp_path / "a.meta.json").read_text() == (
            tmp_path / "b.meta.json"
        ).read_text()

    def test_lb_sweep(self, tmp_path, capsys):
        grid = tmp_path / "grid.json"
        grid.write_text(json.dumps({"t": [2, 3], "p": ["2"], "lambda_points": 3}))
        out_csv = tmp_path / "sweep.csv"
        code, _ = run_cli(["lb-sweep", "--grid", grid, "--out", out_csv], capsys)
        assert code == 0
        lines = out_csv.read_text().splitlines()
        assert len(lines) == 1 + 6
        assert all(line.endswith(",True") for line in lines[1:])


class TestExperiment:
    def _spec(self, tmp_path):
        return {
            "name": "demo",
            "grid": {"seeds": [1, 2], "n": [40, 60], "t": [3], "p": ["2"]},
            "families": ["greedy_bound", "lb_agreement"],
            "output": str(tmp_path / "out"),
        }

    def test_rejects_empty_grid(self, tmp_path):
        with pytest.raises(ValueError):
            run_experiment({"name": "x", "grid": {}, "families": []})

    @staticmethod
    def _strip_timing(text):
        # the seconds column is the one timestamp-like field
        rows = [line.rsplit(",", 1)[0] for line in text.splitlines()]
        return rows

    def test_run_and_resume(self, tmp_path):
        spec = self._spec(tmp_path)
        assert run_experiment(spec) == 0
        csv_path = tmp_path / "out" / "demo.csv"
        full = csv_path.read_text()
        # truncate to simulate an interrupted run, then resume
        lines = full.splitlines()
        csv_path.write_text("\n".join(lines[:4]) + "\n")
        assert run_experiment(spec) == 0
        resumed = csv_path.read_text()
        assert sorted(self._strip_timing(resumed)) == sorted(self._strip_timing(full))

    def test_deterministic_rerun(self, tmp_path):
        spec = self._spec(tmp_path)
        run_experiment(spec)
        first = (tmp_path / "out" / "demo.csv").read_text()
        run_experiment(spec, resume=False)
        second = (tmp_path / "out" / "demo.csv").read_text()
        assert self._strip_timing(second) == self._strip_timing(first)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "spanorm.cli", "lb", "--t", "2", "--p", "1.5",
         "--lambda", "1", "--exact"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ell_exact"] == {"num": 3, "den": 5}


def test_verify_tree_input(tmp_path, capsys):
    # tree: greedy keeps everything, idempotence and ratio checks all apply
    path = tmp_path / "tree.edges"
    path.write_text("6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n")
    code, out = run_cli(["verify", "--input", path, "--stretch", 3], capsys)
    assert code == 0
    checks = json.loads(out)["checks"]
    assert checks["greedy_idempotent"] is True
    assert checks["greedy_ratio_at_least_1"] is True
    assert json.loads(out)["failed"] == []
