"""Tests for the command-line laboratory driver."""

import math
import os

import pytest

from petallab.lab import main

pytestmark = pytest.mark.usefixtures("clean_env")


@pytest.fixture
def clean_env(monkeypatch):
    monkeypatch.delenv("PETALLAB_OUT", raising=False)


def read(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def parse_summary(path):
    out = {}
    for line in read(path).splitlines():
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


class TestSpeedsCommand:
    def test_writes_expected_rows(self, tmp_path, capsys):
        code = main([
            "speeds", "--model", "strip-slit", "--petal", "0",
            "--kmax", "16", "--out", str(tmp_path),
        ])
        assert code == 0
        path = tmp_path / "speeds_strip-slit_p0.csv"
        lines = read(path).splitlines()
        assert lines[0] == "t,v,v_o,v_T"
        assert len(lines) == 18
        assert "17 rows" in capsys.readouterr().out

    def test_byte_identical_reruns(self, tmp_path):
        argv = ["speeds", "--model", "koebe-elliptic", "--kmax", "12",
                "--out", str(tmp_path)]
        assert main(argv) == 0
        first = read(tmp_path / "speeds_koebe-elliptic_p0.csv")
        assert main(argv) == 0
        second = read(tmp_path / "speeds_koebe-elliptic_p0.csv")
        assert first == second

    def test_explicit_grid_wins_over_exponents(self, tmp_path):
        code = main([
            "speeds", "--model", "strip-slit", "--grid=-1,-2,-4",
            "--kmax", "16", "--out", str(tmp_path),
        ])
        assert code == 0
        lines = read(tmp_path / "speeds_strip-slit_p0.csv").splitlines()
        assert len(lines) == 4

    def test_base_override(self, tmp_path):
        code = main([
            "speeds", "--model", "strip-slit", "--base-re", "1.5",
            "--base-im", "0.4", "--kmax", "4", "--out", str(tmp_path),
        ])
        assert code == 0

    def test_petal_index_selects_lower(self, tmp_path):
        code = main([
            "speeds", "--model", "strip-slit", "--petal", "1",
            "--kmax", "4", "--out", str(tmp_path),
        ])
        assert code == 0
        assert (tmp_path / "speeds_strip-slit_p1.csv").exists()


class TestAsymptoteCommand:
    def test_elliptic_model_passes(self, tmp_path, capsys):
        code = main([
            "asymptote", "--model", "koebe-elliptic", "--petal", "0",
            "--out", str(tmp_path),
        ])
        assert code == 0
        summary = parse_summary(tmp_path / "asymptote_koebe-elliptic_p0_summary.txt")
        assert summary["status"] == "pass"
        assert float(summary["slope"]) == pytest.approx(-0.25, rel=1e-6)
        assert float(summary["target"]) == -0.25
        assert float(summary["r2"]) > 0.999
        assert "PASS asymptote" in capsys.readouterr().out

    def test_parabolic_target_is_zero(self, tmp_path):
        code = main([
            "asymptote", "--model", "sector-parabolic", "--out", str(tmp_path),
        ])
        assert code == 0
        summary = parse_summary(
            tmp_path / "asymptote_sector-parabolic_p0_summary.txt"
        )
        assert float(summary["target"]) == 0.0
        assert abs(float(summary["slope"])) <= 1e-3

    def test_unreachable_tolerance_fails(self, tmp_path, capsys):
        code = main([
            "asymptote", "--model", "sector-parabolic", "--tol", "1e-9",
            "--out", str(tmp_path),
        ])
        assert code == 1
        summary = parse_summary(
            tmp_path / "asymptote_sector-parabolic_p0_summary.txt"
        )
        assert summary["status"] == "fail"
        assert "FAIL asymptote" in capsys.readouterr().out


class TestForwardCommand:
    def test_translation_rate(self, tmp_path):
        code = main(["forward", "--model", "strip-slit", "--out", str(tmp_path)])
        assert code == 0
        lines = read(tmp_path / "forward_strip-slit.csv").splitlines()
        assert lines[0] == "t,v"
        assert len(lines) == 14

    def test_parabolic_and_elliptic_rates_vanish(self, tmp_path):
        for name in ("sector-parabolic", "koebe-elliptic"):
            assert main(["forward", "--model", name, "--out", str(tmp_path)]) == 0


class TestHmeasureCommand:
    def test_hyperbolic_orbit_nontangential(self, tmp_path):
        code = main([
            "hmeasure", "--model", "strip-slit", "--petal", "0",
            "--out", str(tmp_path),
        ])
        assert code == 0
        summary = parse_summary(tmp_path / "hmeasure_strip-slit_p0_summary.txt")
        assert summary["status"] == "pass"
        assert summary["tangential"] == "False"
        theta = float(summary["theta"])
        assert 0.05 * math.pi < theta < 0.95 * math.pi
        data = read(tmp_path / "hmeasure_strip-slit_p0.dat").splitlines()
        assert data[0].startswith("#")
        assert len(data) >= 13

    def test_parabolic_orbit_tangential(self, tmp_path):
        # The parabolic orbit creeps into its boundary point along the
        # circle, so the non-tangential criterion fails by design.
        code = main([
            "hmeasure", "--model", "sector-parabolic", "--kmax", "400",
            "--out", str(tmp_path),
        ])
        assert code == 1
        summary = parse_summary(
            tmp_path / "hmeasure_sector-parabolic_p0_summary.txt"
        )
        assert summary["status"] == "fail"
        assert summary["tangential"] == "True"


class TestBoundsCommand:
    def test_logrecip_series(self, tmp_path):
        code = main(["bounds", "--profile", "logrecip", "--out", str(tmp_path)])
        assert code == 0
        lines = read(tmp_path / "bounds_logrecip.dat").splitlines()
        assert lines[0].startswith("#")
        assert len(lines) == 6
        t, ratio = lines[2].split()
        assert float(t) == -1000.0
        assert float(ratio) == pytest.approx(0.0059087552789821, rel=1e-12)

    def test_gaussian_single_point(self, tmp_path):
        code = main([
            "bounds", "--profile", "gaussian", "--grid=-1e3",
            "--out", str(tmp_path),
        ])
        assert code == 0
        lines = read(tmp_path / "bounds_gaussian.dat").splitlines()
        ratio = float(lines[1].split()[1])
        assert ratio >= 0.249

    def test_gaussian_near_anchor_fails_window(self, tmp_path, capsys):
        code = main([
            "bounds", "--profile", "gaussian", "--grid=-10",
            "--out", str(tmp_path),
        ])
        assert code == 1
        assert "FAIL bounds" in capsys.readouterr().out

    def test_table_profile_from_file(self, tmp_path):
        table = tmp_path / "profile.txt"
        table.write_text("-1000.0 1.0\n-1.0 1.0\n")
        code = main([
            "bounds", "--profile", str(table), "--grid=-100,-500",
            "--out", str(tmp_path),
        ])
        assert code == 0
        lines = read(tmp_path / "bounds_custom.dat").splitlines()
        # constant unit gap: upper bound is d0 + (t0 - t) = 1 + (t0 - t)
        t, ratio = lines[1].split()
        assert float(ratio) == pytest.approx((1.0 + 99.0) / 1e4, rel=1e-12)


class TestVerifyCommand:
    def test_full_suite_passes(self, tmp_path, capsys):
        code = main(["verify", "--out", str(tmp_path)])
        assert code == 0
        out = capsys.readouterr().out
        report = read(tmp_path / "verify_report.txt").splitlines()
        assert len(report) == 11
        assert all(line.startswith("PASS") for line in report)
        assert out.count("PASS") == 11

    def test_seed_override_still_passes(self, tmp_path):
        assert main(["verify", "--seed", "7", "--out", str(tmp_path)]) == 0


class TestOutputRouting:
    def test_env_var_supplies_out_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PETALLAB_OUT", str(tmp_path / "enved"))
        code = main(["speeds", "--model", "strip-slit", "--kmax", "2"])
        assert code == 0
        assert (tmp_path / "enved" / "speeds_strip-slit_p0.csv").exists()

    def test_flag_beats_env_var(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PETALLAB_OUT", str(tmp_path / "enved"))
        code = main([
            "speeds", "--model", "strip-slit", "--kmax", "2",
            "--out", str(tmp_path / "flagged"),
        ])
        assert code == 0
        assert (tmp_path / "flagged" / "speeds_strip-slit_p0.csv").exists()
        assert not (tmp_path / "enved").exists()


class TestConfigFile:
    def test_config_supplies_defaults(self, tmp_path):
        config = tmp_path / "exp.cfg"
        config.write_text(
            "# experiment setup\n"
            "model = strip-slit\n"
            "kmax = 3\n"
            f"out = {tmp_path / 'cfgout'}\n"
        )
        code = main(["speeds", "--config", str(config)])
        assert code == 0
        lines = read(tmp_path / "cfgout" / "speeds_strip-slit_p0.csv").splitlines()
        assert len(lines) == 5

    def test_flags_beat_config(self, tmp_path):
        config = tmp_path / "exp.cfg"
        config.write_text("model = strip-slit\nkmax = 12\n")
        code = main([
            "speeds", "--config", str(config), "--kmax", "2",
            "--out", str(tmp_path),
        ])
        assert code == 0
        lines = read(tmp_path / "speeds_strip-slit_p0.csv").splitlines()
        assert len(lines) == 4

    def test_dashed_keys_accepted(self, tmp_path):
        config = tmp_path / "exp.cfg"
        config.write_text("model = strip-slit\nbase-re = 1.5\nkmax = 2\n")
        code = main(["speeds", "--config", str(config), "--out", str(tmp_path)])
        assert code == 0

    def test_unknown_key_is_usage_error(self, tmp_path, capsys):
        config = tmp_path / "exp.cfg"
        config.write_text("flavor = chocolate\n")
        code = main(["speeds", "--config", str(config), "--out", str(tmp_path)])
        assert code == 2
        assert "unknown key" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        code = main([
            "speeds", "--config", str(tmp_path / "nope.cfg"),
            "--out", str(tmp_path),
        ])
        assert code == 2


class TestUsageErrors:
    def test_missing_model(self, tmp_path, capsys):
        assert main(["speeds", "--out", str(tmp_path)]) == 2
        assert "--model is required" in capsys.readouterr().err

    def test_unknown_model(self, tmp_path):
        assert main(["speeds", "--model", "moon", "--out", str(tmp_path)]) == 2

    def test_bad_petal_index(self, tmp_path):
        assert main([
            "speeds", "--model", "koebe-elliptic", "--petal", "3",
            "--out", str(tmp_path),
        ]) == 2

    def test_bad_grid(self, tmp_path):
        assert main([
            "speeds", "--model", "strip-slit", "--grid=-1,apple",
            "--out", str(tmp_path),
        ]) == 2

    def test_forward_time_grid_inverted(self, tmp_path):
        assert main([
            "forward", "--model", "strip-slit", "--kmin", "9", "--kmax", "2",
            "--out", str(tmp_path),
        ]) == 2

    def test_unknown_profile(self, tmp_path):
        assert main(["bounds", "--profile", "cubic", "--out", str(tmp_path)]) == 2

    def test_base_outside_domain(self, tmp_path):
        assert main([
            "speeds", "--model", "strip-slit", "--base-re", "-5",
            "--base-im", "0", "--kmax", "2", "--out", str(tmp_path),
        ]) == 2

    def test_no_subcommand(self, capsys):
        assert main([]) == 2

    def test_unknown_subcommand_exits_two(self):
        with pytest.raises(SystemExit) as info:
            main(["orbit"])
        assert info.value.code == 2
