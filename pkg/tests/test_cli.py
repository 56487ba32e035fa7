import json

import numpy as np
import pytest
from click.testing import CliRunner

from charpint.cli import main

runner = CliRunner()


def run(args):
    return runner.invoke(main, args, catch_exceptions=False,
                         standalone_mode=False)


def invoke(args):
    # standalone mode so sys.exit codes surface in result.exit_code
    return runner.invoke(main, args)


class TestAcousticsCommand:
    def test_material1_single_iteration(self, tmp_path):
        res = invoke(["acoustics", "--material", "1", "--nx", "128",
                      "--prec", "jacobi", "--inner", "exact",
                      "--out", str(tmp_path)])
        assert res.exit_code == 0
        doc = json.loads((tmp_path / "report.json").read_text())
        assert doc["converged"]
        assert doc["iterations"] == 1
        assert doc["residual_history"][1] <= 1e-10

    def test_residuals_csv_schema(self, tmp_path):
        invoke(["acoustics", "--material", "2", "--nx", "64",
                "--out", str(tmp_path)])
        lines = (tmp_path / "residuals.csv").read_text().splitlines()
        assert lines[0] == "iteration,relative_residual"
        first = lines[1].split(",")
        assert first[0] == "0" and float(first[1]) == 1.0

    def test_snapshot_file(self, tmp_path):
        invoke(["acoustics", "--material", "1", "--nx", "64",
                "--snapshot", "0,1", "--out", str(tmp_path)])
        snaps = sorted(tmp_path.glob("snapshot_*.csv"))
        assert len(snaps) == 2
        header = snaps[0].read_text().splitlines()[0]
        assert header == "x,t,p,u"

    def test_rerun_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            invoke(["acoustics", "--material", "5", "--nx", "64",
                    "--seed", "7", "--snapshot", "1", "--out", str(out)])
        assert (a / "residuals.csv").read_bytes() \
            == (b / "residuals.csv").read_bytes()
        sa = sorted(a.glob("snapshot_*.csv"))[0]
        sb = sorted(b.glob("snapshot_*.csv"))[0]
        assert sa.read_bytes() == sb.read_bytes()

    def test_bad_material_is_usage_error(self, tmp_path):
        res = invoke(["acoustics", "--material", "9", "--out", str(tmp_path)])
        assert res.exit_code == 2

    def test_not_converged_exit_code(self, tmp_path):
        res = invoke(["acoustics", "--material", "2", "--nx", "64",
                      "--maxit", "1", "--out", str(tmp_path)])
        assert res.exit_code == 3

    def test_config_file_defaults_and_flag_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("nx = 64\nmaterial = 2\nprec = gs\n")
        out = tmp_path / "out"
        res = invoke(["acoustics", "--config", str(cfg), "--material", "1",
                      "--out", str(out)])
        assert res.exit_code == 0
        doc = json.loads((out / "report.json").read_text())
        assert doc["config"]["material"] == 1      # flag wins
        assert doc["config"]["prec"] == "gs"       # file fills the rest
        assert doc["grid"]["n_x"] == 64

    def test_unknown_config_key(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("resolution = 64\n")
        res = invoke(["acoustics", "--config", str(cfg),
                      "--out", str(tmp_path)])
        assert res.exit_code == 2


class TestNonlinearCommands:
    def test_swe_idp(self, tmp_path):
        res = invoke(["swe", "--problem", "idp", "--nx", "64",
                      "--linear", "exact", "--out", str(tmp_path)])
        assert res.exit_code == 0
        doc = json.loads((tmp_path / "report.json").read_text())
        assert doc["converged"] and doc["iterations"] <= 10

    def test_euler_sod_snapshot(self, tmp_path):
        res = invoke(["euler", "--problem", "sod", "--nx", "64",
                      "--snapshot", "0.25", "--out", str(tmp_path)])
        assert res.exit_code == 0
        snap = tmp_path / "snapshot_0.25.csv"
        rows = snap.read_text().splitlines()
        assert rows[0] == "x,t,rho,mom,E"
        assert len(rows) == 65

    def test_problem_model_mismatch(self, tmp_path):
        res = invoke(["swe", "--problem", "sod", "--out", str(tmp_path)])
        assert res.exit_code == 2

    def test_inadmissible_exit_code(self, tmp_path):
        # heavily under-resolved inner solves on a strong-shock problem
        res = invoke(["euler", "--problem", "sod", "--eps", "0.99",
                      "--nx", "64", "--linear", "prec", "--blocks", "approx",
                      "--inner-it", "1", "--out", str(tmp_path)])
        assert res.exit_code in (3, 4, 5)
        doc = json.loads((tmp_path / "report.json").read_text())
        assert not doc["converged"]


class TestCsvFormatting:
    def test_seventeen_significant_digits(self, tmp_path):
        invoke(["acoustics", "--material", "2", "--nx", "64",
                "--snapshot", "1", "--out", str(tmp_path)])
        snap = sorted(tmp_path.glob("snapshot_*.csv"))[0]
        row = snap.read_text().splitlines()[1].split(",")
        # round-trips exactly through float parsing
        for tok in row:
            assert format(float(tok), ".17g") == tok
