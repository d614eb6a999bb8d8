"""Distances between curves: trapezoidal L2 and grid-point L-infinity."""
from __future__ import annotations

import enum

import numpy as np

from . import kernels
from .core import Curve, Grid, check_same_grid


class MetricKind(enum.Enum):
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, text: str) -> "MetricKind":
        key = str(text).strip().lower()
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown metric {text!r}; expected 'l2' or 'linf'")

    def __str__(self):
        return self.value


def l2_distance(f: Curve, g: Curve) -> float:
    """Trapezoidal approximation of ``sqrt(integral (f - g)^2 dt)``."""
    check_same_grid(f.grid, g.grid)
    return float(kernels.l2_to_reference(f.values[None, :], g.values, f.grid.weights)[0])


def linf_distance(f: Curve, g: Curve) -> float:
    """Largest absolute difference over the grid points."""
    check_same_grid(f.grid, g.grid)
    return float(kernels.linf_to_reference(f.values[None, :], g.values)[0])


def distance(f: Curve, g: Curve, metric: MetricKind) -> float:
    if metric is MetricKind.L2:
        return l2_distance(f, g)
    return linf_distance(f, g)


def distances_to(rows: np.ndarray, reference: np.ndarray, grid: Grid, metric: MetricKind) -> np.ndarray:
    """Distances from every row of ``rows`` to ``reference`` (raw arrays, no validation)."""
    rows = np.atleast_2d(rows)
    if metric is MetricKind.L2:
        return kernels.l2_to_reference(rows, reference, grid.weights)
    return kernels.linf_to_reference(rows, reference)


def pairwise_distances(values: np.ndarray, grid: Grid, metric: MetricKind) -> np.ndarray:
    if metric is MetricKind.L2:
        return kernels.pairwise_l2(values, grid.weights)
    return kernels.pairwise_linf(values)
