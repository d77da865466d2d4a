import pytest

from doublab.commands import REPORT_NAME, cmd_oracle, cmd_report, cmd_simulate, cmd_verify
from doublab.config import EngineType, ExperimentConfig, OracleKind
from doublab.errors import ConfigError, RecordError, ResourceCapExceeded
from doublab.records import CSV_NAME, SUMMARY_NAME, read_csv


def _config(out_dir, **values):
    return ExperimentConfig(seed=values.pop("seed", 1), out_dir=out_dir, **values)


def test_simulate_writes_one_row_per_replicate(out_dir):
    record = cmd_simulate(_config(out_dir, engine=EngineType.SIZE, n_values=[50, 100], replicates=20))
    rows = read_csv(record.out_dir / CSV_NAME)
    assert len(rows) == 40
    assert [r["replicate"] for r in rows[:3]] == ["0", "1", "2"]
    assert set(record.summary) == {"50", "100"}
    assert (record.out_dir / SUMMARY_NAME).exists()


def test_simulate_is_reproducible(out_dir):
    first = cmd_simulate(_config(out_dir, engine=EngineType.DEGREE, n_values=[30], replicates=10, experiment="a"))
    second = cmd_simulate(_config(out_dir, engine=EngineType.DEGREE, n_values=[30], replicates=10, experiment="b"))
    assert (first.out_dir / CSV_NAME).read_bytes() == (second.out_dir / CSV_NAME).read_bytes()


def test_explicit_refuses_huge_trees(out_dir):
    with pytest.raises(ResourceCapExceeded):
        cmd_simulate(_config(out_dir, engine=EngineType.EXPLICIT, n_values=[40], replicates=1))


@pytest.mark.parametrize("engine", list(EngineType))
def test_every_engine_fills_b(out_dir, engine):
    record = cmd_simulate(_config(out_dir, engine=engine, n_values=[6], replicates=3, m=3, k=2))
    rows = read_csv(record.out_dir / CSV_NAME)
    assert all(row["B"] != "" for row in rows)
    assert all(row["engine"] == engine.value for row in rows)


def test_explicit_degree_columns_add_up(out_dir):
    record = cmd_simulate(_config(out_dir, engine=EngineType.EXPLICIT, n_values=[8], replicates=5, m=2))
    for row in read_csv(record.out_dir / CSV_NAME):
        assert int(row["U_0"]) + int(row["U_1"]) + int(row["U_2"]) == int(row["B"]) + 1


def test_size_oracle_payload(out_dir):
    record = cmd_oracle(_config(out_dir, oracle=OracleKind.SIZE, n_values=[2]))
    assert record.oracle["result"] == {"2": {"3": "2/3", "6": "1/3"}}


def test_moments_oracle_payload(out_dir):
    record = cmd_oracle(_config(out_dir, oracle=OracleKind.MOMENTS, n_values=[5, 40], k_max=3))
    result = record.oracle["result"]
    assert result["m_k"]["3"] == "50/3"
    assert set(result["mean_minus_2n"].values()) == {"0"}
    assert result["moments"]["5"]["2"] == "120"


def test_statistic_oracle_payload(out_dir):
    record = cmd_oracle(_config(out_dir, oracle=OracleKind.STATISTIC, chain="profile", n_values=[2]))
    assert record.oracle["result"]["2"] == {"[1,2,1]": "2/3", "[1,2,4]": "1/3"}


def test_other_oracles(out_dir):
    inf = cmd_oracle(_config(out_dir, oracle=OracleKind.INF_TREE, n_values=[2], experiment="inf"))
    assert inf.oracle["result"]["2"]["exact_mean"] == "17/3"
    fp = cmd_oracle(_config(out_dir, oracle=OracleKind.FIXED_POINT, m=4, replicates=50, experiment="fp"))
    assert set(fp.oracle["result"]) == {"2", "3", "4"}
    enum = cmd_oracle(_config(out_dir, oracle=OracleKind.ENUMERATE, n_values=[2], experiment="enum"))
    assert len(enum.oracle["result"]["laws"]["2"]) == 2


def test_oracle_cap(out_dir):
    with pytest.raises(ResourceCapExceeded):
        cmd_oracle(_config(out_dir, oracle=OracleKind.ENUMERATE, n_values=[9]))


def test_verify_pass_and_fail(out_dir):
    passing = cmd_verify(_config(
        out_dir,
        tests=["oracle_equivalence", "fixed_point"],
        thresholds={"oracle_equivalence.n_max": 3, "fixed_point.m_max": 4, "fixed_point.trials": 100},
        experiment="ok",
    ))
    assert passing.passed
    assert passing.summary == {"oracle_equivalence": "pass", "fixed_point": "pass"}

    failing = cmd_verify(_config(
        out_dir,
        tests=["size_oracle"],
        thresholds={"size_oracle.n": 4, "size_oracle.replicates": 500, "size_oracle.chi2_p_min": 1.0},
        experiment="bad",
    ))
    assert not failing.passed
    assert failing.summary == {"size_oracle": "FAIL"}


def test_verify_unknown_test(out_dir):
    with pytest.raises(ConfigError):
        cmd_verify(_config(out_dir, tests=["bogus"]))


def test_report_lists_constants(out_dir):
    cmd_simulate(_config(out_dir, engine=EngineType.DEGREE, n_values=[200], replicates=5, experiment="deg"))
    cmd_oracle(_config(out_dir, oracle=OracleKind.MOMENTS, n_values=[10], experiment="mom"))
    path = cmd_report(out_dir)
    assert path == out_dir / REPORT_NAME
    text = path.read_text()
    assert text.startswith("# doublab report")
    assert "degree i=0: target 0.5" in text
    assert "height LB constant 2.1960" in text
    assert "mean U_0 / |tree|" in text
    assert "E[B_n] - 2n is zero for every n: True" in text


def test_report_needs_records(out_dir):
    with pytest.raises(RecordError):
        cmd_report(out_dir)
