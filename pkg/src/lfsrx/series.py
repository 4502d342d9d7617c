"""Numeric series backing the figure exports."""

from __future__ import annotations

import csv
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


@dataclass
class SeriesTable:
    """A labelled ``(x, y[, ref])`` series with strictly increasing ``x``."""

    label: str
    x: np.ndarray
    y: np.ndarray
    ref: np.ndarray | None = None
    columns: tuple = field(default=("x", "y", "ref"))

    def __post_init__(self):
        self.x = np.asarray(self.x)
        self.y = np.asarray(self.y)
        if self.ref is not None:
            self.ref = np.asarray(self.ref, dtype=float)
            if self.ref.shape != self.x.shape:
                raise ValueError("ref column length differs from x")
        if self.x.shape != self.y.shape or self.x.ndim != 1:
            raise ValueError("x and y must be 1-D arrays of equal length")
        if self.x.size > 1 and not (np.diff(self.x) > 0).all():
            raise ValueError("x must be strictly increasing")

    def __len__(self):
        return self.x.size

    def rows(self):
        if self.ref is None:
            return list(zip(self.x.tolist(), self.y.tolist()))
        return list(zip(self.x.tolist(), self.y.tolist(), self.ref.tolist()))

    def header(self) -> list[str]:
        return list(self.columns[: 2 if self.ref is None else 3])

    def to_csv(self, path) -> Path:
        """Write header plus rows, replacing ``path`` atomically."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(self.header())
                for row in self.rows():
                    writer.writerow([_fmt(v) for v in row])
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise
        return path


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def read_csv(path) -> SeriesTable:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = np.array([[float(v) for v in row] for row in reader]).reshape(-1, len(header))
    ref = data[:, 2] if len(header) > 2 else None
    return SeriesTable(Path(path).stem, data[:, 0], data[:, 1], ref, tuple(header) + ("ref",) * (3 - len(header)))
