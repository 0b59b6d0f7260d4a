"""Test tables, JSON-lines records and charts.

Module Information:
    - Filename: test_reports.py
    - Module: test_reports
    - Location: tests/
"""

import json

import pandas as pd

from cubic_census.reports import SCHEMA_VERSION, ReportTable, plot_counts, write_json, write_jsonl


def test_table_shaping():
    """Column names are standardized, rows sorted and duplicates dropped."""
    table = (
        ReportTable.from_records([{"M Value": 8, "Count": 2}, {"M Value": 4, "Count": 1}, {"M Value": 4, "Count": 1}])
        .standardize_column_names()
        .drop_duplicates()
        .sort_by(["m_value"])
    )
    df = table.get_df()
    assert list(df.columns) == ["m_value", "count"]
    assert df["m_value"].tolist() == [4, 8]


def test_float_columns_round():
    """Float columns are cast and rounded; unknown names are ignored."""
    df = ReportTable.from_records([{"x": 1.23456789}]).with_float_columns(["x", "missing"], digits=3).get_df()
    assert df["x"].iloc[0] == 1.235


def test_csv_round_trip(tmp_path):
    """to_csv creates directories and from_csv reads the table back."""
    path = ReportTable.from_records([{"M": 4, "main": 0.5}]).to_csv(tmp_path / "nested" / "t.csv")
    assert b"\r\n" not in path.read_bytes()
    assert ReportTable.from_csv(path).get_df().to_dict("records") == [{"M": 4, "main": 0.5}]


def test_jsonl_is_stamped_and_sorted(tmp_path):
    """Each record carries schema_version and keys are sorted."""
    path = write_jsonl(tmp_path / "r.jsonl", [{"b": 1, "a": 2}, {"c": 3}])
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2
    assert lines[0] == json.dumps({"a": 2, "b": 1, "schema_version": SCHEMA_VERSION}, sort_keys=True)


def test_jsonl_is_deterministic(tmp_path):
    """The same records give the same bytes."""
    records = [{"M": 6, "e": [1, 0, 5]}]
    first = write_jsonl(tmp_path / "a.jsonl", records).read_bytes()
    second = write_jsonl(tmp_path / "b.jsonl", records).read_bytes()
    assert first == second


def test_write_json(tmp_path):
    """Single JSON documents carry the schema version too."""
    data = json.loads(write_json(tmp_path / "s.json", {"passed": True}).read_text(encoding="utf-8"))
    assert data == {"passed": True, "schema_version": SCHEMA_VERSION}


def test_plot_counts(tmp_path):
    """The counting chart is written as a PNG."""
    frame = pd.DataFrame({"M": [4, 6], "count": [3, 10], "main": [2.5, 9.0], "combined": [2.9, 9.8]})
    path = plot_counts(frame, tmp_path / "chart.png")
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
