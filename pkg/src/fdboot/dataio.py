"""CSV dataset files and result tables.

Dataset layout is long on the grid and wide on curves::

    t,<curve-id-1>,...,<curve-id-n>
    0.0,1.25,...
    ...

Floats are written with ``repr`` (shortest round-trip form, at most 17
significant digits) so a written sample re-reads bit for bit.
"""
from __future__ import annotations

import csv
import io
import math
from pathlib import Path

import numpy as np

from .core import FunctionalSample, Grid
from .errors import FdError


class DatasetFormatError(FdError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def format_float(x: float) -> str:
    return repr(float(x))


def dumps_dataset(sample: FunctionalSample, curve_ids=None) -> str:
    ids = list(curve_ids) if curve_ids is not None else [f"c{i + 1}" for i in range(sample.n)]
    if len(ids) != sample.n or len(set(ids)) != len(ids):
        raise FdError("curve ids must be unique, one per curve")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", *ids])
    for j, t in enumerate(sample.grid.points):
        w.writerow([format_float(t), *(format_float(v) for v in sample.values[:, j])])
    return buf.getvalue()


def write_dataset(path, sample: FunctionalSample, curve_ids=None):
    Path(path).write_text(dumps_dataset(sample, curve_ids), encoding="utf-8")


def loads_dataset(text: str):
    """Parse dataset CSV text into ``(sample, curve_ids)``."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetFormatError("empty file", 1) from None
    if len(header) < 2 or header[0].strip().lower() != "t":
        raise DatasetFormatError("header must start with 't' followed by curve ids", 1)
    ids = [h.strip() for h in header[1:]]
    if len(set(ids)) != len(ids) or any(not i for i in ids):
        raise DatasetFormatError("curve ids must be unique and non-empty", 1)

    grid, rows = [], []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not c.strip() for c in rec):
            continue
        if len(rec) != len(header):
            raise DatasetFormatError(f"expected {len(header)} fields, found {len(rec)}", lineno)
        try:
            vals = [float(c) for c in rec]
        except ValueError as exc:
            raise DatasetFormatError(f"not a number: {exc}", lineno) from None
        if not all(math.isfinite(v) for v in vals):
            raise DatasetFormatError("non-finite value", lineno)
        if grid and vals[0] <= grid[-1]:
            raise DatasetFormatError("grid points must be strictly increasing", lineno)
        grid.append(vals[0])
        rows.append(vals[1:])
    if len(grid) < 2:
        raise DatasetFormatError("a dataset needs at least 2 grid points")
    return FunctionalSample(Grid(grid), np.array(rows).T), ids


def read_dataset(path):
    return loads_dataset(Path(path).read_text(encoding="utf-8"))


def dumps_table(columns, records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for rec in records:
        w.writerow([format_float(rec[c]) if isinstance(rec[c], float) else rec[c] for c in columns])
    return buf.getvalue()
