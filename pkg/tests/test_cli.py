"""Test the command-line subcommands and their exit codes.

Module Information:
    - Filename: test_cli.py
    - Module: test_cli
    - Location: tests/

Each run writes under pytest's tmp_path and uses q = 5 with the smallest
boxes that still produce output.
"""

import json

import pandas as pd

from cubic_census.census import EnumBounds, enumerate_fields
from cubic_census.cli import build_parser, config_from_args, run, worker_map

TINY_BOX = ["--boundsA", "1", "--boundsB", "1", "--margin", "0"]


def test_predict_writes_table(tmp_path):
    """predict writes one row per M."""
    assert run(["predict", "--q", "5", "--out", str(tmp_path)]) == 0
    df = pd.read_csv(tmp_path / "predict_q5.csv")
    assert df["M"].tolist() == [4, 6, 8, 10, 12]
    assert (df["main"] > 0).all()


def test_predict_with_condition(tmp_path):
    """--prime and --split pair into a splitting condition."""
    argv = ["predict", "--q", "5", "--M", "8", "--prime", "T", "--split", "(111)", "--out", str(tmp_path)]
    assert run(argv) == 0
    assert len(pd.read_csv(tmp_path / "predict_q5.csv")) == 1


def test_tables(tmp_path):
    """tables writes the C₂ tables and an exact assembly check."""
    assert run(["tables", "--q", "5", "--out", str(tmp_path)]) == 0
    assert len(pd.read_csv(tmp_path / "c2_table_q5.csv")) == 15
    assert pd.read_csv(tmp_path / "assembly_q5.csv")["exact_match"].all()


def test_fourier_check(tmp_path):
    """The closed transforms agree at every linear prime."""
    assert run(["fourier-check", "--q", "5", "--out", str(tmp_path)]) == 0
    assert len(pd.read_csv(tmp_path / "fourier_q5.csv")) == 5


def test_census_writes_records(tmp_path):
    """census writes records, counts, a summary and the candidate log."""
    assert run(["census", "--q", "5", "--M", "4", *TINY_BOX, "--out", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / "census_summary_q5_M4.json").read_text(encoding="utf-8"))
    assert summary["partial"] is False
    assert summary["count"] >= 1
    assert (tmp_path / "census_q5_M4.jsonl").exists()
    assert (tmp_path / "counts_q5_M4.csv").exists()
    assert (tmp_path / "candidates_q5_M4.jsonl").exists()


def test_census_budget_exit_code(tmp_path):
    """A budget overrun exits with 2 and marks the summary partial."""
    assert run(["census", "--q", "5", "--M", "4", *TINY_BOX, "--budget", "75", "--out", str(tmp_path)]) == 2
    summary = json.loads((tmp_path / "census_summary_q5_M4.json").read_text(encoding="utf-8"))
    assert summary["partial"] is True


def test_census_form_orbits(tmp_path):
    """--ell switches census to form-orbit counting."""
    assert run(["census", "--q", "5", "--ell", "0", "--sigma", "(3)", "--margin", "0", "--out", str(tmp_path)]) == 0
    df = pd.read_csv(tmp_path / "orbits_q5_ell0.csv")
    assert df["sigma"].tolist() == ["(3)"]
    assert df["forms_scanned"].iloc[0] == 25
    assert df["orbits"].iloc[0] == 1


def test_error_exit_codes(tmp_path):
    """Domain errors exit with 1."""
    out = ["--out", str(tmp_path)]
    assert run(["predict", "--prime", "T", *out]) == 1
    assert run(["predict", "--M", "5", *out]) == 1
    assert run(["census", *out]) == 1
    assert run(["predict", "--q", "9", *out]) == 1


def test_flags_override_environment(monkeypatch, tmp_path):
    """Flags win over CUBIC_CENSUS_* variables."""
    monkeypatch.setenv("CUBIC_CENSUS_Q", "7")
    monkeypatch.setenv("CUBIC_CENSUS_SEED", "4")
    args = build_parser().parse_args(["predict", "--q", "5", "--out", str(tmp_path)])
    cfg = config_from_args(args)
    assert (cfg.q, cfg.seed) == (5, 4)


def test_worker_map_single_thread():
    """One thread uses the builtin map."""
    with worker_map(1) as mapper:
        assert mapper is map
        assert list(mapper(abs, [-1, 2])) == [1, 2]


def test_pooled_census_matches_serial():
    """Four worker processes give the same records, in the same order, as the builtin map."""
    bounds = EnumBounds(1, 2, margin=0)
    serial = enumerate_fields(5, 4, bounds)
    with worker_map(4) as mapper:
        pooled = enumerate_fields(5, 4, bounds, mapper=mapper)
    assert serial.count == 125
    assert [r.to_json() for r in pooled.fields] == [r.to_json() for r in serial.fields]
