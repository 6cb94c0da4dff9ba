import json

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from cli import cli, parse_psi


def node(lam, *targets, multiplicity=None):
    return {"lambda": [lam.real, lam.imag] if isinstance(lam, complex) else [lam, 0.0],
            "multiplicity": multiplicity or len(targets),
            "targets": [[t, 0.0] for t in targets]}


def problem(family, *nodes, **extra):
    return {"version": 1, "space": {"family": family}, "nodes": list(nodes), **extra}


@pytest.fixture
def run(tmp_path):
    """Invokes the CLI with --out and returns (exit code, parsed report)"""
    runner = CliRunner()

    def invoke(*args):
        out = tmp_path / "report.json"
        if out.exists():
            out.unlink()
        result = runner.invoke(cli, [*args, "--out", str(out)])
        return result.exit_code, json.loads(out.read_text(encoding="utf-8"))
    return invoke


SCHWARZ = problem("hinfinity", node(0.0, 0.0), node(0.5, 0.5))


class TestInterpNorm:
    def test_wiener_single_node(self, run, problem_file):
        path = problem_file(problem("wiener", node(0.5, 0.7)))
        code, report = run("interp-norm", path, "--seed", "1", "--degree", "8", "--restarts", "2")
        assert code == 0
        assert report["status"] == "ok"
        assert report["dual_lower"] == pytest.approx(0.7, abs=1e-8)
        assert report["primal_upper"] == pytest.approx(0.7, abs=1e-6)
        assert report["shift_ratio"] == pytest.approx(0.7, abs=1e-8)
        assert report["effective_options"]["seed"] == 1
        assert "runtime_ms" not in report

    def test_hardy2_gap_closes(self, run, problem_file):
        path = problem_file(problem("hardy2", node(0.3, 1.0), node(-0.4j, 0.5)))
        code, report = run("interp-norm", path, "--seed", "3", "--restarts", "4")
        assert code == 0
        assert report["gap"] <= 1e-5
        assert report["shift_ratio"] is None

    def test_hinfinity_uses_the_model_matrix(self, run, problem_file):
        code, report = run("interp-norm", problem_file(SCHWARZ), "--degree", "10")
        assert code == 0
        assert report["dual_lower"] == pytest.approx(1.0, abs=1e-8)
        assert report["alpha_star"] == []
        assert report["space"]["q"] == "inf"

    def test_wiener_shift_ratio_is_a_lower_bound(self, run, problem_file):
        path = problem_file(problem("wiener", node(0.2, 1.0), node(-0.3, 0.0), node(0.5j, 0.5)))
        code, report = run("interp-norm", path, "--seed", "4", "--degree", "30", "--restarts", "4")
        assert code == 0
        assert 0.0 < report["shift_ratio"] <= report["primal_upper"] + 1e-8

    def test_sweep_csv(self, run, problem_file, tmp_path):
        path = problem_file(problem("wiener", node(0.2, 1.0), node(-0.3, 0.0)))
        csv = tmp_path / "sweep.csv"
        code, _ = run("interp-norm", path, "--seed", "2", "--degree", "12", "--csv", str(csv))
        assert code == 0
        frame = pd.read_csv(csv)
        assert list(frame.columns) == ["degree", "primal_value"]
        assert frame["degree"].iloc[-1] == 12

    def test_timing(self, run, problem_file):
        path = problem_file(problem("wiener", node(0.5, 0.7)))
        _, report = run("interp-norm", path, "--seed", "1", "--degree", "4", "--timing")
        assert report["runtime_ms"] >= 0

    def test_file_options_apply(self, run, problem_file):
        path = problem_file(problem("wiener", node(0.5, 0.7), options={"seed": 9, "restarts": 2}))
        code, report = run("interp-norm", path, "--degree", "4")
        assert code == 0
        assert report["effective_options"]["seed"] == 9
        assert report["effective_options"]["restarts"] == 2

    def test_missing_seed_is_an_input_error(self, run, problem_file, monkeypatch):
        monkeypatch.delenv("INTERP_SEED", raising=False)
        path = problem_file(problem("wiener", node(0.1, 1.0), node(-0.4, 0.5)))
        code, report = run("interp-norm", path)
        assert code == 1
        assert report["error"]["kind"] == "input"


class TestInputErrors:
    def test_malformed_json(self, run, problem_file):
        code, report = run("interp-norm", problem_file('{"version": 1,'))
        assert code == 1
        assert report == {"command": "interp-norm", "error": {"kind": "parse", "message": report["error"]["message"]}}

    def test_unknown_version(self, run, problem_file):
        code, report = run("pick-check", problem_file({**SCHWARZ, "version": 2}), "--C", "1")
        assert code == 1
        assert report["error"]["kind"] == "validation"

    def test_boundary_node(self, run, problem_file):
        code, report = run("model-matrix", problem_file(problem("hardy2", node(1.0, 1.0))))
        assert code == 1
        assert report["error"]["kind"] == "input"


class TestPickCheck:
    @pytest.mark.parametrize("C, verdict", [(1.0, "feasible"), (0.5, "infeasible")])
    def test_schwarz(self, run, problem_file, C, verdict):
        code, report = run("pick-check", problem_file(SCHWARZ), "--C", str(C))
        assert code == 0
        assert report["verdict"] == verdict
        assert report["C_min"] == pytest.approx(1.0, abs=1e-10)

    def test_hardy2_single_node(self, run, problem_file):
        code, report = run("pick-check", problem_file(problem("hardy2", node(0.6, 0.7))), "--C", "0.7")
        assert code == 0
        assert report["verdict"] == "feasible"
        assert report["C_min"] == pytest.approx(0.7 * 0.8)

    def test_wiener_is_rejected(self, run, problem_file):
        code, report = run("pick-check", problem_file(problem("wiener", node(0.5, 0.7))), "--C", "1")
        assert code == 1
        assert report["error"]["kind"] == "input"

    def test_repeated_nodes_are_rejected(self, run, problem_file):
        path = problem_file(problem("hinfinity", node(0.5, 1.0, 0.0)))
        code, report = run("pick-check", path, "--C", "1")
        assert code == 1
        assert "model-matrix" in report["error"]["message"]

    def test_margin_csv(self, run, problem_file, tmp_path):
        csv = tmp_path / "margin.csv"
        run("pick-check", problem_file(SCHWARZ), "--C", "1", "--csv", str(csv))
        frame = pd.read_csv(csv)
        assert len(frame) == 41
        assert frame["margin"].is_monotonic_increasing


class TestModelMatrix:
    def test_nodes_at_zero(self, run, problem_file):
        path = problem_file(problem("hardy2", node(0.0, multiplicity=3)))
        code, report = run("model-matrix", path, "--terms", "4")
        assert code == 0
        entries = np.array([[complex(*z) for z in row] for row in report["entries"]])
        np.testing.assert_array_equal(entries, np.eye(3, k=-1))
        assert report["invariants"]["lower_triangular"]
        assert report["invariants"]["diagonal_matches_nodes"]
        assert len(report["windows"][0]) == 4

    def test_windows_csv(self, run, problem_file, tmp_path):
        csv = tmp_path / "windows.csv"
        path = problem_file(problem("wiener", node(0.3, 1.0), node(-0.2j, 1.0)))
        run("model-matrix", path, "--terms", "5", "--csv", str(csv))
        frame = pd.read_csv(csv)
        assert list(frame.columns) == ["basis", "k", "re", "im"]
        assert len(frame) == 10

    def test_output_is_deterministic(self, problem_file, tmp_path):
        path = problem_file(problem("wiener", node(0.3, 1.0), node(-0.2j, 1.0), node(0.5, 1.0)))
        runner = CliRunner()
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        runner.invoke(cli, ["model-matrix", path, "--out", str(first)])
        runner.invoke(cli, ["model-matrix", path, "--out", str(second)])
        assert first.read_bytes() == second.read_bytes()

    def test_stdout_without_out(self, problem_file):
        path = problem_file(problem("hardy2", node(0.3, 1.0)))
        result = CliRunner().invoke(cli, ["model-matrix", path])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["n"] == 1


class TestMatrixBound:
    def test_scalar_matrix(self, run, problem_file):
        path = problem_file(problem("wiener", matrix=[[[0.5, 0.0]]]))
        code, report = run("matrix-bound", path, "--psi", "[1]/[0,1]", "--norm", "rowsum", "--seed", "1")
        assert code == 0
        assert report["actual"] == pytest.approx(2.0)
        assert report["bound_upper"] >= 2.0 - 1e-9
        assert report["hypothesis"] == "verified"

    def test_pole_on_spectrum(self, run, problem_file):
        path = problem_file(problem("wiener", minimal_polynomial=[[0.0, 0.0], [1.0, 0.0]]))
        code, report = run("matrix-bound", path, "--psi", "[1]/[0,1]")
        assert code == 3
        assert report["error"]["kind"] == "precondition"

    def test_constant_function(self, run, problem_file):
        calculus = {"space": {"family": "wiener"}, "constant_c": 2}
        path = problem_file(problem("wiener", minimal_polynomial=[[-0.3, 0.0], [1.0, 0.0]], calculus=calculus))
        code, report = run("matrix-bound", path, "--psi", "[1]")
        assert code == 0
        assert report["bound_lower"] == pytest.approx(2.0)
        assert report["constant_c"] == 2.0

    def test_needs_a_source(self, run, problem_file):
        code, report = run("matrix-bound", problem_file(problem("wiener")))
        assert code == 1
        assert report["error"]["kind"] == "validation"


class TestBoundHarness:
    def test_seed_is_required(self, run, monkeypatch):
        monkeypatch.delenv("INTERP_SEED", raising=False)
        code, report = run("bound-harness", "--samples", "2")
        assert code == 1
        assert "seed" in report["error"]["message"]

    def test_small_run(self, run):
        code, report = run("bound-harness", "--samples", "3", "--n-max", "2", "--seed", "5", "--restarts", "2")
        assert code == 0
        assert report["violations"] == 0
        assert len(report["results"]) == 3

    def test_seed_from_config(self, run, tmp_path):
        config = tmp_path / "config.yaml"
        config.write_text("solver:\n  seed: 8\n  restarts: 2\n")
        code, report = run("--config", str(config), "bound-harness", "--samples", "2", "--n-max", "2")
        assert code == 0
        assert report["effective_options"]["seed"] == 8


class TestParsePsi:
    def test_default_is_identity(self):
        Psi = parse_psi(None)
        assert Psi(0.3) == pytest.approx(0.3)

    def test_quotient(self):
        Psi = parse_psi("[1]/[2,-1]")
        assert Psi(0.5) == pytest.approx(1 / 1.5)
        np.testing.assert_allclose(Psi.poles(), [2.0])

    def test_complex_coefficients(self):
        assert parse_psi("[[0,1]]")(0.2) == pytest.approx(1j)

    def test_malformed(self):
        with pytest.raises(ValueError):
            parse_psi("[1,2")
