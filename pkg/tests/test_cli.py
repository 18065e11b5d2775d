"""End-to-end tests of the command-line interface."""

import json
import subprocess
import sys

import numpy as np
import pytest

from modman.cli import main
from modman.io_json import matrix_to_json

DIAG_KL = 0.14384103622589045
ATANH_HALF = 0.5493061443340549


@pytest.fixture
def kl_pair_files(tmp_path):
    s = tmp_path / "sigma.json"
    t = tmp_path / "tau.json"
    s.write_text(json.dumps(matrix_to_json(np.diag([0.5, 0.5]))))
    t.write_text(json.dumps(matrix_to_json(np.diag([0.25, 0.75]))))
    return str(s), str(t)


@pytest.fixture
def scalar_model_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({
        "rho": matrix_to_json(np.eye(2) / 2),
        "generators": [matrix_to_json(np.diag([1.0, -1.0]))],
    }))
    return str(path)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


class TestDivergenceCommand:
    def test_diagonal_pair_json_value(self, kl_pair_files, capsys):
        s, t = kl_pair_files
        code, out = run_cli(["divergence", "--sigma", s, "--tau", t], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["araki"] == pytest.approx(DIAG_KL, abs=1e-10)
        assert report["umegaki"] == pytest.approx(DIAG_KL, abs=1e-10)
        assert report["dual"] == pytest.approx(DIAG_KL, abs=1e-10)
        assert report["max_disagreement"] <= 1e-9

    def test_random_instances_from_seed(self, capsys):
        code, out = run_cli(["divergence", "--dim", "4", "--seed", "11"], capsys)
        assert code == 0
        assert json.loads(out)["araki"] >= 0.0

    def test_missing_input_is_exit_2(self, capsys):
        code, _ = run_cli(["divergence"], capsys)
        assert code == 2

    def test_unreadable_file_is_exit_2(self, capsys, tmp_path):
        code, _ = run_cli(["divergence", "--sigma", str(tmp_path / "nope.json"),
                           "--tau", str(tmp_path / "nope.json")], capsys)
        assert code == 2


class TestSolveCommand:
    def test_zero_target(self, scalar_model_file, capsys):
        code, out = run_cli(["solve", "--model", scalar_model_file, "--eta", "0"],
                            capsys)
        assert code == 0
        report = json.loads(out)
        assert abs(report["theta"][0]) <= 1e-9

    def test_scalar_benchmark(self, scalar_model_file, capsys):
        code, out = run_cli(["solve", "--model", scalar_model_file, "--eta", "0.5"],
                            capsys)
        assert code == 0
        assert json.loads(out)["theta"][0] == pytest.approx(ATANH_HALF, abs=1e-9)

    def test_unattainable_target_is_exit_2(self, scalar_model_file, capsys):
        code, _ = run_cli(["solve", "--model", scalar_model_file, "--eta", "1.5"],
                          capsys)
        assert code == 2


class TestModelCommand:
    def test_reports_coordinates(self, scalar_model_file, capsys):
        code, out = run_cli(["model", "--model", scalar_model_file,
                             "--theta", "0.5"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["eta"][0] == pytest.approx(np.tanh(0.5), abs=1e-10)
        assert report["potential"] == pytest.approx(np.log(np.cosh(0.5)), abs=1e-10)
        assert report["log_partition"] == pytest.approx(report["potential"], abs=1e-10)


class TestArcCommand:
    def test_csv_long_format(self, capsys):
        code, out = run_cli(["arc", "--dim", "3", "--seed", "2", "--steps", "3",
                             "--format", "csv"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,quantity,value"
        # 3 time points x 3 quantities
        assert len(lines) == 1 + 9


class TestGeodesicCommand:
    def test_e_geodesic(self, scalar_model_file, capsys):
        code, out = run_cli(["geodesic", "--kind", "e", "--model", scalar_model_file,
                             "--theta-a", "0", "--theta-b", "1", "--steps", "3"],
                            capsys)
        assert code == 0
        rows = json.loads(out)["rows"]
        assert rows[0]["divergence_from_start"] <= 1e-12
        assert rows[-1]["divergence_to_end"] <= 1e-12

    def test_m_geodesic(self, kl_pair_files, capsys):
        s, t = kl_pair_files
        code, out = run_cli(["geodesic", "--kind", "m", "--sigma-a", s,
                             "--sigma-b", t, "--steps", "3"], capsys)
        assert code == 0
        rows = json.loads(out)["rows"]
        assert rows[1]["divergence_from_start"] > 0.0

    def test_e_geodesic_needs_model(self, capsys):
        code, _ = run_cli(["geodesic", "--kind", "e"], capsys)
        assert code == 2


class TestKmsCommand:
    def test_residual_is_rounding_noise(self, capsys):
        code, out = run_cli(["kms", "--dim", "4", "--seed", "3", "--t", "0.7"],
                            capsys)
        assert code == 0
        assert json.loads(out)["residual"] <= 1e-10


class TestMetricCommand:
    def test_three_routes_agree(self, capsys):
        code, out = run_cli(["metric", "--dim", "3", "--seed", "4"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["kubo_mori"] == pytest.approx(report["quadrature"], abs=1e-10)
        assert report["kubo_mori"] == pytest.approx(report["eguchi_fd"], abs=1e-5)


class TestVerifyCommand:
    def test_small_run_passes(self, capsys):
        code, out = run_cli(["verify", "--dim", "4", "--seed", "7",
                             "--trials", "3"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["all_pass"]
        assert {c["name"] for c in report["checks"]} >= {
            "divergence-three-way-agreement", "arc-definition-identity",
            "tomita-identity-suite", "flatness-newton-round-trip"}
        for c in report["checks"]:
            assert c["anchor"]
            assert c["pass"] == (c["max_residual"] <= c["tolerance"])

    def test_deterministic_reports(self, capsys):
        _, first = run_cli(["verify", "--dim", "3", "--seed", "5",
                            "--trials", "3"], capsys)
        _, second = run_cli(["verify", "--dim", "3", "--seed", "5",
                             "--trials", "3"], capsys)
        assert first == second

    def test_threads_do_not_change_report(self, capsys):
        _, serial = run_cli(["verify", "--dim", "3", "--seed", "5",
                             "--trials", "4"], capsys)
        _, threaded = run_cli(["verify", "--dim", "3", "--seed", "5",
                               "--trials", "4", "--threads", "4"], capsys)
        assert serial == threaded

    def test_thread_env_var_honored(self, capsys, monkeypatch):
        _, serial = run_cli(["verify", "--dim", "2", "--seed", "5",
                             "--trials", "3"], capsys)
        monkeypatch.setenv("MODMAN_THREADS", "3")
        _, via_env = run_cli(["verify", "--dim", "2", "--seed", "5",
                              "--trials", "3"], capsys)
        assert serial == via_env

    def test_impossible_tolerance_fails_with_exit_1(self, capsys):
        code, out = run_cli(["verify", "--dim", "3", "--seed", "5", "--trials", "2",
                             "--tol", "divergence-three-way-agreement=1e-30"],
                            capsys)
        assert code == 1
        report = json.loads(out)
        assert not report["all_pass"]

    def test_unknown_check_name_is_exit_2(self, capsys):
        code, _ = run_cli(["verify", "--trials", "1", "--tol", "bogus=1"], capsys)
        assert code == 2

    def test_nonpositive_tolerance_is_exit_2(self, capsys):
        code, _ = run_cli(["verify", "--trials", "1", "--tol", "-1"], capsys)
        assert code == 2

    def test_dim_out_of_range_is_exit_2(self, capsys):
        code, _ = run_cli(["verify", "--dim", "1", "--trials", "1"], capsys)
        assert code == 2

    def test_csv_format(self, capsys):
        code, out = run_cli(["verify", "--dim", "3", "--seed", "5", "--trials", "2",
                             "--format", "csv"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "name,anchor,trials,max_residual,tolerance,pass"
        assert len(lines) > 10

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out = run_cli(["verify", "--dim", "3", "--seed", "5", "--trials", "2",
                             "--out", str(target)], capsys)
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["all_pass"]


class TestModuleEntryPoint:
    def test_python_dash_m_invocation(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "modman", "kms", "--dim", "2", "--seed", "1"],
            capture_output=True, text=True, timeout=120,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["residual"] <= 1e-10

    def test_console_script_if_installed(self):
        import shutil

        exe = shutil.which("modman")
        if exe is None:
            pytest.skip("console script not on PATH")
        proc = subprocess.run([exe, "kms", "--dim", "2", "--seed", "1"],
                              capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0
