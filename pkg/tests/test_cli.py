from typer.testing import CliRunner

from doublab.cli import app
from doublab.config import get_config

runner = CliRunner()


def test_lists_procedures():
    result = runner.invoke(app, ["tests"])
    assert result.exit_code == 0
    assert "oracle_equivalence" in result.output


def test_simulate_writes_records(out_dir):
    result = runner.invoke(app, ["simulate", "--engine", "size", "--n", "20", "--n", "40", "-r", "5", "--out", str(out_dir)])
    assert result.exit_code == 0, result.output
    assert (out_dir / "default" / "replicates.csv").exists()


def test_simulate_from_config_file(tmp_path, out_dir):
    path = tmp_path / "exp.toml"
    path.write_text('seed = 4\nengine = "profile"\nn_values = [15]\nreplicates = 3\nexperiment = "prof"\n')
    result = runner.invoke(app, ["simulate", "--config", str(path), "--out", str(out_dir)])
    assert result.exit_code == 0, result.output
    assert (out_dir / "prof" / "summary.json").exists()


def test_oracle_size(out_dir):
    result = runner.invoke(app, ["oracle", "size", "--n", "2", "--out", str(out_dir)])
    assert result.exit_code == 0, result.output
    assert "2/3" in result.output


def test_verify_exit_codes(out_dir):
    ok = runner.invoke(app, [
        "verify", "fixed_point", "-t", "fixed_point.m_max=3", "-t", "fixed_point.trials=20", "--out", str(out_dir),
    ])
    assert ok.exit_code == 0, ok.output

    failed = runner.invoke(app, [
        "verify", "size_oracle",
        "-t", "size_oracle.n=3", "-t", "size_oracle.replicates=200", "-t", "size_oracle.chi2_p_min=1.0",
        "--out", str(out_dir), "-x", "failing",
    ])
    assert failed.exit_code == 1

    unknown = runner.invoke(app, ["verify", "bogus", "--out", str(out_dir)])
    assert unknown.exit_code == 2


def test_unknown_threshold_is_a_usage_error(out_dir):
    result = runner.invoke(app, ["verify", "fixed_point", "-t", "fixed_point.colour=3", "--out", str(out_dir)])
    assert result.exit_code == 2


def test_cap_exit_code(out_dir):
    result = runner.invoke(app, ["simulate", "--engine", "explicit", "--n", "40", "--out", str(out_dir)])
    assert result.exit_code == 3


def test_cap_exit_code_from_worker_processes(out_dir):
    args = ["simulate", "--engine", "explicit", "--n", "60", "--cap", "50", "-r", "4", "--out", str(out_dir)]
    assert runner.invoke(app, [*args, "-p", "1"]).exit_code == 3
    result = runner.invoke(app, [*args, "-p", "2"])
    assert result.exit_code == 3, result.output


def test_report(out_dir):
    assert runner.invoke(app, ["report", str(out_dir)]).exit_code == 2
    runner.invoke(app, ["oracle", "moments", "--n", "10", "--out", str(out_dir)])
    result = runner.invoke(app, ["report", str(out_dir)])
    assert result.exit_code == 0, result.output
    assert (out_dir / "report.md").exists()


def test_config_set_and_show():
    assert runner.invoke(app, ["config", "set", "parallelism", "3"]).exit_code == 0
    assert get_config().parallelism == 3
    assert runner.invoke(app, ["config", "set", "caps.enumerate", "4"]).exit_code == 0
    assert get_config().caps.enumerate == 4
    shown = runner.invoke(app, ["config", "show"])
    assert "Parallelism: 3" in shown.output


def test_config_set_rejects_bad_input():
    assert runner.invoke(app, ["config", "set", "colour", "red"]).exit_code == 2
    assert runner.invoke(app, ["config", "set", "parallelism", "many"]).exit_code == 2
