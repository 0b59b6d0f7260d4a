"""Tables, JSON-lines records and charts written by the CLI.

Module Information:
    - Filename: reports.py
    - Module: reports
    - Location: src/cubic_census/

Key Concepts:
    - ReportTable is a fluent pandas wrapper; each step returns the table.
    - Every JSON-lines record carries ``schema_version`` and is written with
      sorted keys, so repeated runs produce identical bytes.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from collections.abc import Iterable, Mapping
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from .utils_logger import get_logger  # noqa: E402

LOGGER = get_logger(__name__)

SCHEMA_VERSION = 1
FLOAT_FORMAT = "%.12g"

#####################################
# Define Classes
#####################################


class ReportTable:
    """Reusable helper for the tabular outputs of a run.

    Example:
        table = (
            ReportTable.from_records(rows)
            .standardize_column_names()
            .with_float_columns(["main", "secondary"], digits=6)
            .sort_by(["M"])
        )
        table.to_csv("outputs/predict.csv")
    """

    def __init__(self, df: pd.DataFrame) -> None:
        self.df = df.copy()

    # ---------- Constructors ----------

    @classmethod
    def from_records(cls, records: Iterable[Mapping[str, object]]) -> ReportTable:
        return cls(pd.DataFrame.from_records(list(records)))

    @classmethod
    def from_csv(cls, path: str | Path, **read_kwargs) -> ReportTable:
        return cls(pd.read_csv(Path(path), **read_kwargs))

    # ---------- Shaping ----------

    def standardize_column_names(self) -> ReportTable:
        """Lowercase column names with spaces replaced by underscores."""
        self.df.columns = [str(col).strip().lower().replace(" ", "_") for col in self.df.columns]
        return self

    def with_float_columns(self, columns: Iterable[str], digits: int = 12) -> ReportTable:
        """Cast the named columns to float64 and round them; missing columns are ignored."""
        for col in columns:
            if col in self.df.columns:
                self.df[col] = self.df[col].astype("float64").round(digits)
        return self

    def sort_by(self, columns: list[str]) -> ReportTable:
        present = [c for c in columns if c in self.df.columns]
        if present:
            self.df = self.df.sort_values(present, kind="mergesort").reset_index(drop=True)
        return self

    def drop_duplicates(self, subset: Iterable[str] | None = None) -> ReportTable:
        self.df = self.df.drop_duplicates(subset=subset)
        return self

    # ---------- Output helpers ----------

    def get_df(self) -> pd.DataFrame:
        """Return a copy of the table."""
        return self.df.copy()

    def to_csv(self, path: str | Path, index: bool = False, **to_csv_kwargs) -> Path:
        """Write CSV, creating parent directories."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        to_csv_kwargs.setdefault("float_format", FLOAT_FORMAT)
        self.df.to_csv(path, index=index, lineterminator="\n", **to_csv_kwargs)
        LOGGER.info(f"Wrote {len(self.df)} rows to {path}")
        return path


#####################################
# Define Functions
#####################################


def write_jsonl(path: str | Path, records: Iterable[Mapping[str, object]]) -> Path:
    """One JSON object per line, each stamped with schema_version."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps({**record, "schema_version": SCHEMA_VERSION}, sort_keys=True) + "\n")
            count += 1
    LOGGER.info(f"Wrote {count} records to {path}")
    return path


def write_json(path: str | Path, payload: Mapping[str, object]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({**payload, "schema_version": SCHEMA_VERSION}, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path


def plot_counts(frame: pd.DataFrame, path: str | Path) -> Path:
    """Census counts against main and main+secondary predictions, by M."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(frame["M"], frame["count"], "o", label="census")
    ax.plot(frame["M"], frame["main"], "--", label="main term")
    ax.plot(frame["M"], frame["combined"], "-", label="main + secondary")
    ax.set_xlabel("M")
    ax.set_ylabel("number of fields")
    ax.set_title("Cubic fields with |Disc| = q^M")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    LOGGER.info(f"Saved chart to {path}")
    return path


#####################################
# List all exports
#####################################

__all__ = ["SCHEMA_VERSION", "ReportTable", "write_jsonl", "write_json", "plot_counts"]
