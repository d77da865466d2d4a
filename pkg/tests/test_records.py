import json

import pytest

from doublab.errors import RecordError
from doublab.records import (
    CSV_NAME,
    SUMMARY_NAME,
    RunRecord,
    csv_columns,
    find_records,
    load_record,
    read_csv,
    render_csv,
)


def test_columns():
    assert csv_columns(2, 1) == ["replicate", "n", "engine", "B", "kappa", "H", "U_0", "U_1", "U_2", "h_1"]


def test_render_csv_cells():
    text = render_csv([{"replicate": 0, "n": 5, "engine": "size", "B": 9, "kappa": None, "H": 0.1}], list(csv_columns(0, 0)))
    lines = text.splitlines()
    assert lines[0] == "#schema_version=1"
    assert lines[1] == "replicate,n,engine,B,kappa,H,U_0"
    assert lines[2] == "0,5,size,9,,0.10000000000000001,"


def test_write_and_load(out_dir):
    record = RunRecord(
        kind="simulate",
        config={"seed": 1},
        rows=[{"replicate": 0, "n": 3, "engine": "size", "B": 4}],
        columns=csv_columns(1, 0),
        summary={"3": {"mean_B": 4.0}},
    )
    run_dir = record.write(out_dir / "exp")
    loaded = load_record(run_dir)
    assert loaded.kind == "simulate"
    assert loaded.summary == {"3": {"mean_B": 4.0}}
    assert loaded.rows[0]["B"] == "4"
    assert loaded.rows[0]["kappa"] == ""
    assert loaded.oracle is None


def test_passed_follows_reports():
    record = RunRecord(kind="verify", config={}, reports=[{"passed": True}, {"passed": False}])
    assert not record.passed


def test_read_csv_rejects_other_schema(tmp_path):
    path = tmp_path / CSV_NAME
    path.write_text("#schema_version=99\nreplicate,n\n")
    with pytest.raises(RecordError):
        read_csv(path)
    with pytest.raises(RecordError):
        read_csv(tmp_path / "absent.csv")


def test_corrupt_summary(tmp_path):
    (tmp_path / SUMMARY_NAME).write_text("{")
    with pytest.raises(RecordError):
        load_record(tmp_path)
    (tmp_path / SUMMARY_NAME).write_text(json.dumps({"kind": "verify"}))
    with pytest.raises(RecordError):
        load_record(tmp_path)


def test_find_records(out_dir):
    with pytest.raises(RecordError):
        find_records(out_dir)
    with pytest.raises(RecordError):
        find_records(out_dir / "missing")
    RunRecord(kind="oracle", config={}, oracle={"kind": "size", "result": {}}).write(out_dir / "b")
    RunRecord(kind="verify", config={}).write(out_dir / "a")
    assert [r.kind for r in find_records(out_dir)] == ["verify", "oracle"]
