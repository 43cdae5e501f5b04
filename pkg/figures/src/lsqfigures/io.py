"""CSV loading with column-contract validation."""

from __future__ import annotations

import csv

import numpy as np


class FigureInputError(Exception):
    """A figure input file is missing, empty, or lacks required columns."""


def load_csv(path: str, required_columns: list[str]) -> dict[str, np.ndarray]:
    """Read a CSV into per-column float arrays, validating the header.

    Raises FigureInputError naming the expected header when a required
    column is absent, and when the file has a header but no data rows.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise FigureInputError(f"{path}: file is empty") from None
            rows = list(reader)
    except OSError as exc:
        raise FigureInputError(f"{path}: {exc}") from exc
    missing = [c for c in required_columns if c not in header]
    if missing:
        raise FigureInputError(
            f"{path}: missing columns {missing}; expected header to contain "
            f"{','.join(required_columns)}"
        )
    if not rows:
        raise FigureInputError(f"{path}: no data rows")
    data = np.array(rows, dtype=float)
    return {c: data[:, header.index(c)] for c in required_columns}
