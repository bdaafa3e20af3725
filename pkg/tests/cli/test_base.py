import os

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

from thinfilm.cli.io import MANIFEST_NAME, audit_manifest, read_manifest
from thinfilm.cli.main import (EXIT_CONFIG, EXIT_OK, EXIT_POSITIVITY, build_parser, main,
                               mode_range)
from thinfilm.core.base import validate_params
from thinfilm.core.config import parse_config
from thinfilm.solver.base import dispersion_rate
from tests.base import config_path

SHORT_DECAY = """
[grid]
n = 32

[params]
beta = 12
delta = 12
r = 1

[run]
t_end = 2e-6
dt0 = 1e-7

[init]
h0 = 1 + 0.3*sin(2*pi*x)
"""


def read_text(path):
    with open(path) as handle:
        return handle.read()


class CommandTestCase:
    @pytest.fixture(autouse=True)
    def workspace(self, tmp_path):
        self.tmp = tmp_path

    def run(self, *argv, output="out"):
        target = str(self.tmp / output)
        status = main(list(argv) + ["-o", target])
        return status, target

    def simulate_steady(self):
        status, target = self.run("simulate", config_path("steady.ini"), output="steady")
        assert status == EXIT_OK
        return os.path.join(target, "trajectory.npz")


class TestSimulate(CommandTestCase):
    def test_steady_run(self):
        status, target = self.run("simulate", config_path("steady.ini"))
        assert status == EXIT_OK
        manifest = read_manifest(target)
        assert manifest["exit_status"] == 0
        assert manifest["command"] == "simulate"
        assert manifest["last_good_time"] == pytest.approx(1e-5)
        assert manifest["config"]["params"]["beta"] == 12.0
        assert {"config.ini", "series.csv", "balance.csv", "trajectory.npz",
                "snapshots/snapshot_00000.csv"} <= set(manifest["files"])
        assert audit_manifest(target) == []
        series = pd.read_csv(os.path.join(target, "series.csv"))
        assert series["mass"].max() - series["mass"].min() <= 1e-12
        snapshot = pd.read_csv(os.path.join(target, "snapshots", "snapshot_00000.csv"))
        assert list(snapshot.columns) == ["x", "h", "p"]

    def test_echoed_config_reruns(self):
        status, target = self.run("simulate", config_path("steady.ini"))
        config = parse_config(read_text(os.path.join(target, "config.ini")))
        assert config.t_end == pytest.approx(1e-5)
        assert config.params.beta == 12.0

    def test_missing_parameter(self):
        text = read_text(config_path("steady.ini")).replace("beta = 12\n", "")
        path = self.tmp / "broken.ini"
        path.write_text(text)
        status, target = self.run("simulate", str(path))
        assert status == EXIT_CONFIG
        manifest = read_manifest(target)
        assert manifest["exit_status"] == EXIT_CONFIG
        assert "beta" in manifest["extra"]["error"]

    def test_missing_file(self):
        status, _ = self.run("simulate", str(self.tmp / "nowhere.ini"))
        assert status == EXIT_CONFIG

    @pytest.mark.slow
    def test_pinch_off(self):
        status, target = self.run("simulate", config_path("pinch.ini"))
        assert status == EXIT_POSITIVITY
        manifest = read_manifest(target)
        assert manifest["exit_status"] == EXIT_POSITIVITY
        assert 0.0 < manifest["last_good_time"] < 1e-3
        assert "trajectory.npz" in manifest["files"]
        assert audit_manifest(target) == []


class TestPostProcessing(CommandTestCase):
    def test_diagnose_stored_trajectory(self):
        status, target = self.run("diagnose", self.simulate_steady())
        assert status == EXIT_OK
        frame = pd.read_csv(os.path.join(target, "diagnostics.csv"))
        assert frame["entropy_residual"].dropna().max() <= 1e-12
        assert_allclose(frame["mass"], 1.0, rtol=1e-14)

    def test_reconstruct(self):
        status, target = self.run("reconstruct", self.simulate_steady(), "--snapshots", "0,2",
                                  "--eps", "0.5")
        assert status == EXIT_OK
        files = set(read_manifest(target)["files"])
        assert {"v1/v1_00000.csv", "v1/v1_00002.csv", "eps_0.5/eta_00000.csv",
                "eps_0.5/v1_00002.csv", "depth_average.csv"} <= files
        eta = pd.read_csv(os.path.join(target, "eps_0.5", "eta_00000.csv"))
        assert_allclose(eta["eta"], 0.5)
        report = pd.read_csv(os.path.join(target, "depth_average.csv"))
        assert report["no_slip_defect"].max() <= 1e-12

    def test_reconstruct_index_out_of_range(self):
        status, _ = self.run("reconstruct", self.simulate_steady(), "--snapshots", "99")
        assert status == EXIT_CONFIG

    def test_sweep_eps(self):
        path = self.tmp / "short.ini"
        path.write_text(SHORT_DECAY)
        status, target = self.run("sweep-eps", str(path), "--pairs", "single_mode",
                                  "--no-resolution-check")
        assert status == EXIT_OK
        sweep = pd.read_csv(os.path.join(target, "sweep_single_mode.csv"))
        assert list(sweep.columns) == ["term", "eps", "magnitude", "predicted_exponent",
                                       "fitted_slope"]
        inertia = sweep[sweep.term == "structure_inertia"]
        assert_allclose(inertia.fitted_slope, 4.0, atol=1e-8)
        limit = pd.read_csv(os.path.join(target, "limit_residual.csv"))
        assert list(limit.pair) == ["single_mode"]
        manifest = read_manifest(target)
        assert manifest["extra"]["test_pairs"] == {"single_mode": "1"}

    def test_sweep_eps_unknown_pair(self):
        status, _ = self.run("sweep-eps", self.simulate_steady(), "--pairs", "nope")
        assert status == EXIT_CONFIG


class TestStandalone(CommandTestCase):
    def test_dispersion(self):
        status, target = self.run("dispersion", "--modes", "1..3", "--hbar", "1.5")
        assert status == EXIT_OK
        table = pd.read_csv(os.path.join(target, "dispersion.csv"))
        assert list(table.m) == [1, 2, 3]
        params = validate_params(beta=12.0, delta=0.0, r=1.0)
        assert_allclose(table.sigma, dispersion_rate(2 * np.pi * table.m.to_numpy(), 1.5, params),
                        rtol=1e-15)

    def test_outputs_are_deterministic(self):
        first = self.run("dispersion", "--beta", "3", "--delta", "2", "--r", "3", output="a")[1]
        second = self.run("dispersion", "--beta", "3", "--delta", "2", "--r", "3", output="b")[1]
        assert read_manifest(first)["files"] == read_manifest(second)["files"]

    def test_mms_space(self):
        status, target = self.run("mms", "--ns", "16,32", "--skip-time", "--random-fields",
                                  "--seed", "7")
        assert status == EXIT_OK
        manifest = read_manifest(target)
        assert manifest["seed"] == 7
        assert "mms_time.csv" not in manifest["files"]
        assert len(pd.read_csv(os.path.join(target, "mms_space.csv"))) == 2

    def test_nondimensionalize(self):
        status, target = self.run("nondimensionalize", config_path("physical_pdms.ini"),
                                  "--n", "32")
        assert status == EXIT_OK
        groups = pd.read_csv(os.path.join(target, "groups.csv"))
        values = dict(zip(groups.group, groups.value))
        assert values["beta_hat"] == pytest.approx(1.0)
        config = parse_config(read_text(os.path.join(target, "solver.ini")))
        assert config.grid.n == 32
        assert config.params.r == pytest.approx(values["r_estimate"])
        assert read_manifest(target)["extra"]["warnings"] == []

    def test_invalid_parameters(self):
        status, target = self.run("dispersion", "--r", "5")
        assert status == EXIT_CONFIG
        assert os.path.exists(os.path.join(target, MANIFEST_NAME))


class TestParser:
    def test_usage_error_exit_status(self):
        with pytest.raises(SystemExit) as excinfo:
            build_parser().parse_args(["simulate", "steady.ini"])
        assert excinfo.value.code == EXIT_CONFIG

    def test_mode_range(self):
        assert mode_range("2..5") == [2, 3, 4, 5]
        assert mode_range("1,3") == [1, 3]
