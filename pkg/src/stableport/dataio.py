"""Delimited-text ingestion of time series.

Accepts comma- or whitespace-separated files, one observation per row, with
an optional header.  Errors carry 1-based row numbers.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import DataError

__all__ = ["SeriesFile", "ingest", "log_returns"]

TRANSFORMS = ("none", "log_returns")


@dataclass(frozen=True)
class SeriesFile:
    """Where to read a series: a path ('-' for stdin), which column, and
    which transform to apply after parsing."""

    path: str
    column: object = 0  # int index or header name
    transform: str = "none"

    def __post_init__(self):
        if self.transform not in TRANSFORMS:
            raise ValueError(f"transform must be one of {TRANSFORMS}")


def _split(line: str) -> list:
    return line.split(",") if "," in line else line.split()


def _read_lines(path: str) -> list:
    if path == "-":
        return sys.stdin.read().splitlines()
    try:
        with open(path) as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _resolve_column(first_row: list, column) -> tuple:
    """Column index plus whether the first row is a header."""
    if isinstance(column, str) and not _is_number(column):
        stripped = [c.strip() for c in first_row]
        if column not in stripped:
            raise DataError(f"column {column!r} not found in header {stripped}")
        return stripped.index(column), True
    idx = int(column)
    header = not all(_is_number(c.strip()) for c in first_row)
    return idx, header


def log_returns(values: np.ndarray) -> np.ndarray:
    """log(x_{t+1} / x_t); every input value must be strictly positive."""
    bad = np.flatnonzero(values <= 0.0)
    if bad.size:
        raise DataError(
            f"log-returns transform requires positive values; "
            f"observation {bad[0] + 1} is {values[bad[0]]}"
        )
    return np.diff(np.log(values))


def ingest(source: SeriesFile) -> np.ndarray:
    """Parse a delimited file into a 1-d float array and apply the
    configured transform."""
    lines = [ln for ln in _read_lines(source.path) if ln.strip()]
    if not lines:
        raise DataError(f"{source.path}: no data rows")
    rows = [_split(ln) for ln in lines]
    idx, has_header = _resolve_column(rows[0], source.column)
    data_rows = rows[1:] if has_header else rows
    if not data_rows:
        raise DataError(f"{source.path}: header but no data rows")
    values = np.empty(len(data_rows))
    for i, row in enumerate(data_rows):
        row_number = i + 2 if has_header else i + 1
        if idx >= len(row):
            raise DataError(f"row {row_number}: no column {idx}")
        token = row[idx].strip()
        try:
            values[i] = float(token)
        except ValueError:
            raise DataError(f"row {row_number}: non-numeric cell {token!r}") from None
        if not math.isfinite(values[i]):
            raise DataError(f"row {row_number}: non-finite value {token!r}")
    if source.transform == "log_returns":
        values = log_returns(values)
    return values
