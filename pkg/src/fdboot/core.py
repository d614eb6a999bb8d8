"""Grids, curves and samples of discretised functional data.

Every curve lives on a shared, strictly increasing grid of evaluation
points.  Integrals over the grid use the trapezoidal rule on
``[t_1, t_T]``; the weights are computed once per grid and cached.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    DimensionError,
    GridMismatchError,
    InsufficientSampleError,
    NonFiniteError,
)


def _frozen(array, dtype=float):
    out = np.array(array, dtype=dtype, copy=True)
    out.flags.writeable = False
    return out


class Grid:
    """Ordered evaluation points ``t_1 < ... < t_T``."""

    def __init__(self, points: Sequence[float]):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 1:
            raise DimensionError("grid points must be one-dimensional")
        if pts.size < 2:
            raise DimensionError(f"a grid needs at least 2 points, got {pts.size}")
        if not np.all(np.isfinite(pts)):
            raise NonFiniteError("grid points must be finite")
        if not np.all(np.diff(pts) > 0):
            raise DimensionError("grid points must be strictly increasing")
        self.points = _frozen(pts)

    @classmethod
    def uniform(cls, size: int = 101, start: float = 0.0, stop: float = 1.0) -> "Grid":
        return cls(np.linspace(start, stop, size))

    def __len__(self):
        return self.points.size

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Grid):
            return NotImplemented
        return self.points.shape == other.points.shape and bool(
            np.array_equal(self.points, other.points)
        )

    def __hash__(self):
        return hash(self.points.tobytes())

    def __repr__(self):
        return f"Grid(T={len(self)}, [{self.points[0]:g}, {self.points[-1]:g}])"

    @property
    def span(self) -> float:
        """Length of the integration interval ``t_T - t_1``."""
        return float(self.points[-1] - self.points[0])

    @cached_property
    def weights(self) -> np.ndarray:
        """Trapezoidal quadrature weights, so that ``integral f = weights @ f``."""
        h = np.diff(self.points)
        w = np.zeros(self.points.size)
        w[:-1] += h / 2
        w[1:] += h / 2
        w.flags.writeable = False
        return w

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


def check_same_grid(a: Grid, b: Grid):
    if a != b:
        raise GridMismatchError(f"curves live on different grids: {a!r} vs {b!r}")


@dataclass(frozen=True, eq=False)
class Curve:
    """One function evaluated on a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (len(self.grid),):
            raise DimensionError(
                f"curve has {vals.size} values but the grid has {len(self.grid)} points"
            )
        bad = np.flatnonzero(~np.isfinite(vals))
        if bad.size:
            raise NonFiniteError(f"non-finite curve value at column {bad[0]}", column=int(bad[0]))
        object.__setattr__(self, "values", _frozen(vals))

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "Curve":
        return cls(grid, np.full(len(grid), float(value)))

    def __len__(self):
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.grid == other.grid and bool(np.array_equal(self.values, other.values))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class FunctionalSample:
    """``n`` curves on a shared grid, stored as an ``n x T`` matrix."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2 or vals.shape[0] < 1:
            raise DimensionError("sample values must be a non-empty n x T matrix")
        if vals.shape[1] != len(self.grid):
            raise DimensionError(
                f"sample rows have {vals.shape[1]} values but the grid has {len(self.grid)} points"
            )
        finite = np.isfinite(vals)
        if not finite.all():
            row, col = np.argwhere(~finite)[0]
            raise NonFiniteError(
                f"non-finite value at row {row}, column {col}", row=int(row), column=int(col)
            )
        object.__setattr__(self, "values", _frozen(vals))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def T(self) -> int:
        return self.values.shape[1]

    def __len__(self):
        return self.n

    def curve(self, i: int) -> Curve:
        return Curve(self.grid, self.values[i])

    def curves(self):
        return [self.curve(i) for i in range(self.n)]

    def take(self, indices) -> "FunctionalSample":
        return FunctionalSample(self.grid, self.values[np.asarray(indices)])

    def with_values(self, values) -> "FunctionalSample":
        return FunctionalSample(self.grid, values)


@dataclass(frozen=True, eq=False)
class CovMatrix:
    """Symmetric ``T x T`` covariance of a sample across grid points."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError("covariance matrix must be square")
        scale = max(float(np.max(np.abs(m))), 1.0)
        if np.max(np.abs(m - m.T)) > 1e-12 * scale:
            raise DimensionError("covariance matrix is not symmetric")
        object.__setattr__(self, "matrix", _frozen(m))

    def factor(self) -> np.ndarray:
        """Return ``L`` with ``L @ L.T`` equal to the matrix, negative eigenvalues clamped to 0."""
        return psd_factor(self.matrix)


def psd_factor(matrix: np.ndarray) -> np.ndarray:
    eigval, eigvec = np.linalg.eigh(matrix)
    return eigvec * np.sqrt(np.clip(eigval, 0.0, None))


def build_sample(grid: Grid, rows) -> FunctionalSample:
    """Validate ``rows`` against ``grid`` and wrap them as a sample.

    Raises
    ------
    DimensionError
        If any row length differs from the grid size; ``.row`` names it.
    NonFiniteError
        On NaN/Inf; ``.row`` and ``.column`` locate the first offender.
    """
    rows = list(rows)
    if not rows:
        raise DimensionError("a sample needs at least one curve")
    T = len(grid)
    for i, row in enumerate(rows):
        if len(row) != T:
            raise DimensionError(
                f"row {i} has {len(row)} values, expected {T}", row=i
            )
    return FunctionalSample(grid, np.array(rows, dtype=float))


def empirical_covariance(sample: FunctionalSample) -> CovMatrix:
    if sample.n < 2:
        raise InsufficientSampleError("empirical covariance needs at least 2 curves")
    shifted = sample.values - sample.values[0]
    centred = shifted - shifted.mean(axis=0)
    cov = centred.T @ centred / (sample.n - 1)
    # symmetrise: a + b == b + a bitwise, so the result is exactly symmetric
    cov = (cov + cov.T) / 2
    return CovMatrix(cov)
