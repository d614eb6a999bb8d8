"""Descriptive statistics of a functional sample.

Mean and variance are pointwise.  The median and trimmed mean rank the
curves with one of two depths:

* Fraiman-Muniz: integrate ``1 - |1/2 - F_n(x_i(t))|`` over the grid,
  where ``F_n`` is the pointwise empirical CDF (``<=`` convention, so each
  curve counts itself).  Larger is deeper.
* alpha-radius: distance from a curve to its ``ceil(alpha * n)``-th
  nearest *other* curve.  Smaller is deeper.

Ties in either ordering go to the lower original index.

The ``*_values`` helpers operate on raw ``n x T`` arrays and skip input
validation; the bootstrap loops call them directly.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import Curve, FunctionalSample, Grid
from .errors import InfeasibleParameterError, InsufficientSampleError
from .metrics import MetricKind, pairwise_distances


class DepthKind(enum.Enum):
    FRAIMAN_MUNIZ = "fm"
    ALPHA_RADIUS = "radius"


@dataclass(frozen=True)
class DepthMethod:
    kind: DepthKind = DepthKind.FRAIMAN_MUNIZ
    alpha: float = 0.5
    metric: MetricKind = MetricKind.L2

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise InfeasibleParameterError(f"alpha must lie in (0, 1], got {self.alpha}", "alpha")

    @classmethod
    def fraiman_muniz(cls) -> "DepthMethod":
        return cls(DepthKind.FRAIMAN_MUNIZ)

    @classmethod
    def alpha_radius(cls, alpha: float = 0.5, metric: MetricKind = MetricKind.L2) -> "DepthMethod":
        return cls(DepthKind.ALPHA_RADIUS, alpha, metric)

    def check_feasible(self, n: int):
        if self.kind is DepthKind.ALPHA_RADIUS:
            _radius_rank(self.alpha, n)


@dataclass(frozen=True, eq=False)
class DepthScores:
    """Per-curve depth values and the deep-to-shallow ordering (0-based indices)."""

    method: DepthMethod
    scores: np.ndarray
    order: np.ndarray

    @property
    def deepest(self) -> int:
        return int(self.order[0])

    def ranks(self) -> np.ndarray:
        """Rank of each curve, 1 = deepest."""
        ranks = np.empty(self.order.size, dtype=int)
        ranks[self.order] = np.arange(1, self.order.size + 1)
        return ranks


class StatKind(enum.Enum):
    MEAN = "mean"
    VARIANCE = "variance"
    MEDIAN = "median"
    TRIMMED_MEAN = "trimmed"


@dataclass(frozen=True)
class StatisticKind:
    kind: StatKind
    depth: DepthMethod | None = None
    gamma: float = 0.05

    def __post_init__(self):
        needs_depth = self.kind in (StatKind.MEDIAN, StatKind.TRIMMED_MEAN)
        if needs_depth and self.depth is None:
            raise ValueError(f"{self.kind.value} needs a depth method")
        if not needs_depth and self.depth is not None:
            raise ValueError(f"{self.kind.value} takes no depth method")
        if not (0.0 <= self.gamma < 1.0):
            raise InfeasibleParameterError(f"gamma must lie in [0, 1), got {self.gamma}", "gamma")

    @classmethod
    def mean(cls):
        return cls(StatKind.MEAN)

    @classmethod
    def variance(cls):
        return cls(StatKind.VARIANCE)

    @classmethod
    def median(cls, depth: DepthMethod | None = None):
        return cls(StatKind.MEDIAN, depth or DepthMethod())

    @classmethod
    def trimmed_mean(cls, gamma: float = 0.05, depth: DepthMethod | None = None):
        return cls(StatKind.TRIMMED_MEAN, depth or DepthMethod(), gamma)

    @classmethod
    def parse(cls, text: str, *, alpha: float = 0.5, gamma: float = 0.05,
              metric: MetricKind = MetricKind.L2) -> "StatisticKind":
        """Parse ``mean``, ``variance``, ``median-fm``, ``median-radius``,
        ``trimmed-fm`` or ``trimmed-radius``."""
        key = str(text).strip().lower()
        depths = {
            "fm": DepthMethod.fraiman_muniz(),
            "radius": DepthMethod.alpha_radius(alpha, metric),
        }
        if key == "mean":
            return cls.mean()
        if key == "variance":
            return cls.variance()
        head, _, tail = key.partition("-")
        if tail in depths:
            if head == "median":
                return cls.median(depths[tail])
            if head == "trimmed":
                return cls.trimmed_mean(gamma, depths[tail])
        raise ValueError(
            f"unknown statistic {text!r}; expected one of mean, variance, "
            "median-fm, median-radius, trimmed-fm, trimmed-radius"
        )

    @property
    def label(self) -> str:
        if self.depth is None:
            return self.kind.value
        return f"{self.kind.value}-{self.depth.kind.value}"

    def check_feasible(self, n: int):
        if self.kind is StatKind.VARIANCE and n < 2:
            raise InsufficientSampleError("functional variance needs at least 2 curves")
        if self.depth is not None:
            self.depth.check_feasible(n)
        if self.kind is StatKind.TRIMMED_MEAN:
            _kept_count(self.gamma, n)


def _ceil(x: float) -> int:
    # guard against products such as 0.05 * 100 = 5.000000000000001
    return math.ceil(round(x, 9))


def _radius_rank(alpha: float, n: int) -> int:
    k = _ceil(alpha * n)
    if n < 2 or k > n - 1:
        raise InfeasibleParameterError(
            f"alpha={alpha} needs the {k}-th nearest of {n - 1} other curves", "alpha"
        )
    return max(k, 1)


def _kept_count(gamma: float, n: int) -> int:
    kept = n - _ceil(gamma * n)
    if kept < 1:
        raise InfeasibleParameterError(f"gamma={gamma} trims all {n} curves", "gamma")
    return kept


# -- raw-array implementations ------------------------------------------------

def mean_values(X: np.ndarray) -> np.ndarray:
    if (X == X[0]).all():
        # n copies of c need not sum to exactly n * c
        return X[0].copy()
    return X.mean(axis=0)


def mean_values_batch(block: np.ndarray) -> np.ndarray:
    """:func:`mean_values` for each sample of a ``B x n x T`` block."""
    out = block.mean(axis=1)
    same = (block == block[:, :1, :]).all(axis=(1, 2))
    out[same] = block[same, 0, :]
    return out


def variance_values(X: np.ndarray) -> np.ndarray:
    # shift by the first curve: exact zeros when all curves coincide
    shifted = X - X[0]
    centred = shifted - shifted.mean(axis=0)
    return (centred * centred).sum(axis=0) / (X.shape[0] - 1)


def fm_scores_values(X: np.ndarray, grid: Grid) -> np.ndarray:
    return kernels.fm_depth_scores(X, grid.weights)


def radius_scores_values(X: np.ndarray, grid: Grid, alpha: float, metric: MetricKind) -> np.ndarray:
    n = X.shape[0]
    k = _radius_rank(alpha, n)
    dist = pairwise_distances(X, grid, metric)
    np.fill_diagonal(dist, np.inf)
    return np.partition(dist, k - 1, axis=1)[:, k - 1]


def depth_order_values(X: np.ndarray, grid: Grid, depth: DepthMethod):
    if depth.kind is DepthKind.FRAIMAN_MUNIZ:
        scores = fm_scores_values(X, grid)
        order = np.argsort(-scores, kind="stable")
    else:
        scores = radius_scores_values(X, grid, depth.alpha, depth.metric)
        order = np.argsort(scores, kind="stable")
    return scores, order


def median_index_values(X: np.ndarray, grid: Grid, depth: DepthMethod) -> int:
    if X.shape[0] == 1:
        return 0
    if depth.kind is DepthKind.FRAIMAN_MUNIZ:
        return int(np.argmax(fm_scores_values(X, grid)))  # first maximum = lowest index
    return int(np.argmin(radius_scores_values(X, grid, depth.alpha, depth.metric)))


def trimmed_mean_values(X: np.ndarray, grid: Grid, gamma: float, depth: DepthMethod) -> np.ndarray:
    kept = _kept_count(gamma, X.shape[0])
    if kept == X.shape[0]:
        return mean_values(X)
    _, order = depth_order_values(X, grid, depth)
    return mean_values(X[np.sort(order[:kept])])


def statistic_values(kind: StatisticKind, X: np.ndarray, grid: Grid) -> np.ndarray:
    if kind.kind is StatKind.MEAN:
        return mean_values(X)
    if kind.kind is StatKind.VARIANCE:
        return variance_values(X)
    if kind.kind is StatKind.MEDIAN:
        return X[median_index_values(X, grid, kind.depth)].copy()
    return trimmed_mean_values(X, grid, kind.gamma, kind.depth)


# -- public API on validated types --------------------------------------------

def functional_mean(sample: FunctionalSample) -> Curve:
    return Curve(sample.grid, mean_values(sample.values))


def functional_variance(sample: FunctionalSample) -> Curve:
    """Pointwise unbiased sample variance (divisor ``n - 1``)."""
    if sample.n < 2:
        raise InsufficientSampleError("functional variance needs at least 2 curves")
    return Curve(sample.grid, variance_values(sample.values))


def fm_depth(sample: FunctionalSample) -> DepthScores:
    depth = DepthMethod.fraiman_muniz()
    scores, order = depth_order_values(sample.values, sample.grid, depth)
    return DepthScores(depth, scores, order)


def alpha_radius_depth(sample: FunctionalSample, alpha: float = 0.5,
                       metric: MetricKind = MetricKind.L2) -> DepthScores:
    depth = DepthMethod.alpha_radius(alpha, metric)
    scores, order = depth_order_values(sample.values, sample.grid, depth)
    return DepthScores(depth, scores, order)


def depth_scores(sample: FunctionalSample, depth: DepthMethod) -> DepthScores:
    if depth.kind is DepthKind.FRAIMAN_MUNIZ:
        return fm_depth(sample)
    return alpha_radius_depth(sample, depth.alpha, depth.metric)


def functional_median(sample: FunctionalSample, depth: DepthMethod | None = None):
    """Return ``(curve, index)`` of the deepest observed curve (0-based index)."""
    depth = depth or DepthMethod()
    idx = median_index_values(sample.values, sample.grid, depth)
    return sample.curve(idx), idx


def trimmed_mean(sample: FunctionalSample, gamma: float = 0.05,
                 depth: DepthMethod | None = None) -> Curve:
    """Mean of the ``n - ceil(gamma * n)`` deepest curves."""
    if not (0.0 <= gamma < 1.0):
        raise InfeasibleParameterError(f"gamma must lie in [0, 1), got {gamma}", "gamma")
    depth = depth or DepthMethod()
    return Curve(sample.grid, trimmed_mean_values(sample.values, sample.grid, gamma, depth))


def evaluate_statistic(kind: StatisticKind, sample: FunctionalSample) -> Curve:
    kind.check_feasible(sample.n)
    return Curve(sample.grid, statistic_values(kind, sample.values, sample.grid))
