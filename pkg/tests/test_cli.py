"""Command-line interface: subcommands, exit codes, environment defaults."""

import json
import os
import subprocess
import sys

CLI = [sys.executable, "-m", "starkqed.cli"]


def run_cli(*args, env_extra=None, cwd=None):
    env = os.environ.copy()
    env.pop("STARKQED_OUT", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [*CLI, *args], capture_output=True, text=True, env=env, cwd=cwd, timeout=300
    )


def test_sweep_success(tmp_path):
    result = run_cli(
        "sweep",
        "--delta-over-g", "0,2",
        "--beta-over-g", "2",
        "--gt-max", "0.5",
        "--gt-step", "0.1",
        "--out", str(tmp_path),
    )
    assert result.returncode == 0, result.stderr
    names = [line.rsplit("/", 1)[-1] for line in result.stdout.splitlines()]
    assert names == ["sweep_delta0_beta2_nbar0.csv", "sweep_delta2_beta2_nbar0.csv"]
    for name in names:
        assert (tmp_path / name).exists()


def test_invalid_flag_value_exits_2(tmp_path):
    result = run_cli("sweep", "--gt-step", "0", "--out", str(tmp_path))
    assert result.returncode == 2
    assert "gt_step" in result.stderr


def test_unknown_config_key_exits_2(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("gt_velocity = 3\n")
    result = run_cli("sweep", "--config", str(cfg), "--out", str(tmp_path))
    assert result.returncode == 2
    assert "gt_velocity" in result.stderr


def test_unknown_preset_exits_2(tmp_path):
    result = run_cli("preset", "fig99", "--out", str(tmp_path))
    assert result.returncode == 2


def test_unwritable_output_exits_3(tmp_path):
    blocker = tmp_path / "not_a_dir"
    blocker.write_text("taken")
    result = run_cli(
        "sweep", "--gt-max", "0.1", "--gt-step", "0.1", "--out", str(blocker)
    )
    assert result.returncode == 3
    assert "i/o error" in result.stderr


def test_validate_pass_and_report(tmp_path):
    cfg = tmp_path / "micro.cfg"
    cfg.write_text("coupling = 1\ndetunings = 50, 100\ngt_points = 11\n")
    result = run_cli("validate", "--config", str(cfg), "--out", str(tmp_path))
    assert result.returncode == 0, result.stderr
    assert "PASS" in result.stdout
    report = json.loads((tmp_path / "validation_report.json").read_text())
    assert report["passed"] is True


def test_validate_failure_exits_4(tmp_path):
    cfg = tmp_path / "micro.cfg"
    cfg.write_text("coupling = 1\ndetunings = 50\ngt_points = 9\nmax_dev = 1e-9\n")
    result = run_cli("validate", "--config", str(cfg))
    assert result.returncode == 4
    assert "FAIL" in result.stdout


def test_env_var_default_output(tmp_path):
    target = tmp_path / "from_env"
    result = run_cli(
        "sweep",
        "--gt-max", "0.1",
        "--gt-step", "0.1",
        env_extra={"STARKQED_OUT": str(target)},
    )
    assert result.returncode == 0, result.stderr
    assert (target / "sweep_delta0_beta0_nbar0.csv").exists()


def test_preset_writes_manifest(tmp_path):
    result = run_cli(
        "preset", "fig5", "--gt-max", "0.5", "--gt-step", "0.1", "--out", str(tmp_path)
    )
    assert result.returncode == 0, result.stderr
    manifest = json.loads((tmp_path / "fig5_manifest.json").read_text())
    assert manifest["figure"] == "fig5"
    assert len(manifest["series"]) == 2
    assert all((tmp_path / s["csv"]).exists() for s in manifest["series"])


def test_version_flag():
    result = run_cli("--version")
    assert result.returncode == 0
    assert "starkqed" in result.stdout
