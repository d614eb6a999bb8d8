"""Plain and smooth bootstrap, single and double, and the resulting bands.

Stream layout, relative to the stream passed in by the caller:

* first-level resample ``b`` draws indices from ``child(ROLE_LEVEL1, b)``
  and smoothing noise from ``child(ROLE_LEVEL1, b, ROLE_NOISE)``;
* all second-level resamples under ``b`` draw from one stream,
  ``child(ROLE_LEVEL2, b)`` (indices) and
  ``child(ROLE_LEVEL2, b, ROLE_NOISE)`` (noise), consumed in ``eta``
  order as a single ``B2 x n`` block.

Single and double bootstrap therefore see identical first-level draws
under one seed.  Second-level resamples are drawn from the first-level
bootstrap sample with the same method; the smooth bootstrap
re-estimates the covariance on whichever sample it resamples from.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from .core import Curve, FunctionalSample, Grid, check_same_grid, psd_factor
from .errors import InfeasibleParameterError, InsufficientSampleError
from .metrics import MetricKind, distance, distances_to
from .rng import ROLE_LEVEL1, ROLE_LEVEL2, ROLE_NOISE, RngStream
from .stats import StatisticKind, StatKind, mean_values_batch, statistic_values

log = logging.getLogger(__name__)


class BootKind(enum.Enum):
    PLAIN = "plain"
    SMOOTH = "smooth"


@dataclass(frozen=True)
class BootstrapMethod:
    kind: BootKind = BootKind.PLAIN
    beta: float = 0.05

    def __post_init__(self):
        if not self.beta >= 0:
            raise InfeasibleParameterError(f"beta must be >= 0, got {self.beta}", "beta")

    @classmethod
    def plain(cls):
        return cls(BootKind.PLAIN)

    @classmethod
    def smooth(cls, beta: float = 0.05):
        return cls(BootKind.SMOOTH, beta)

    @classmethod
    def parse(cls, text: str, beta: float = 0.05) -> "BootstrapMethod":
        key = str(text).strip().lower()
        if key == "plain":
            return cls.plain()
        if key == "smooth":
            return cls.smooth(beta)
        raise ValueError(f"unknown bootstrap method {text!r}; expected 'plain' or 'smooth'")

    @property
    def label(self) -> str:
        return self.kind.value

    @property
    def adds_noise(self) -> bool:
        return self.kind is BootKind.SMOOTH and self.beta > 0


@dataclass(frozen=True, eq=False)
class BootstrapDistances:
    level: str  # "single" or "double"
    distances: np.ndarray
    statistic_curves: np.ndarray | None = None  # B1 x T first-level estimates

    def __len__(self):
        return self.distances.size


@dataclass(frozen=True, eq=False)
class ConfidenceBand:
    estimate: Curve
    lower: Curve
    upper: Curve
    cutoff: float
    level: float
    method: str
    accepted: int
    degenerate: bool = False


# -- resampling -----------------------------------------------------------------

def _noise_factor(X: np.ndarray, beta: float) -> np.ndarray:
    if X.shape[0] < 2:
        raise InsufficientSampleError("the smooth bootstrap needs at least 2 curves")
    shifted = X - X[0]
    centred = shifted - shifted.mean(axis=0)
    cov = centred.T @ centred / (X.shape[0] - 1)
    return psd_factor((cov + cov.T) / 2) * np.sqrt(beta)


def _draw(X: np.ndarray, method: BootstrapMethod, stream: RngStream, count: int | None,
          factor: np.ndarray | None = None) -> np.ndarray:
    """Resample rows of ``X``; ``count=None`` gives one ``n x T`` sample,
    otherwise a ``count x n x T`` block drawn in sequence from ``stream``."""
    n, T = X.shape
    shape = (n,) if count is None else (count, n)
    idx = stream.generator().integers(0, n, size=shape)
    out = X[idx]
    if method.adds_noise:
        if factor is None:
            factor = _noise_factor(X, method.beta)
        z = stream.child(ROLE_NOISE).generator().standard_normal(shape + (T,))
        out = out + z @ factor.T
    return out


def iid_resample(sample: FunctionalSample, rng: RngStream) -> FunctionalSample:
    """Draw ``n`` curves with replacement, each with probability ``1/n``."""
    return FunctionalSample(sample.grid, _draw(sample.values, BootstrapMethod.plain(), rng, None))


def smooth_resample(sample: FunctionalSample, beta: float, rng: RngStream) -> FunctionalSample:
    """Plain resample plus Gaussian noise with covariance ``beta * Sigma``.

    ``Sigma`` is the empirical covariance of ``sample`` across grid points.
    Noise is drawn via a symmetric eigendecomposition with negative
    eigenvalues clamped to zero, since ``Sigma`` is singular when n <= T.
    Indices come from ``rng`` exactly as in :func:`iid_resample`; the noise
    comes from ``rng.child(ROLE_NOISE)``.
    """
    if sample.n < 2:
        raise InsufficientSampleError("the smooth bootstrap needs at least 2 curves")
    method = BootstrapMethod.smooth(beta)
    return FunctionalSample(sample.grid, _draw(sample.values, method, rng, None))


# -- bootstrap distances --------------------------------------------------------

def _batch_statistic(kind: StatisticKind, block: np.ndarray, grid: Grid) -> np.ndarray:
    if kind.kind is StatKind.MEAN:
        return mean_values_batch(block)
    return np.stack([statistic_values(kind, X, grid) for X in block])


@dataclass
class _Levels:
    estimate: np.ndarray
    level1: np.ndarray
    single: np.ndarray
    pooled: np.ndarray | None


def _run_levels(sample: FunctionalSample, stat: StatisticKind, metric: MetricKind,
                method: BootstrapMethod, B1: int, B2: int | None, rng: RngStream) -> _Levels:
    if B1 < 1 or (B2 is not None and B2 < 1):
        raise InfeasibleParameterError("B1 and B2 must be positive", "B1" if B1 < 1 else "B2")
    stat.check_feasible(sample.n)
    if method.kind is BootKind.SMOOTH and sample.n < 2:
        raise InsufficientSampleError("the smooth bootstrap needs at least 2 curves")
    X, grid = sample.values, sample.grid
    estimate = statistic_values(stat, X, grid)
    factor = _noise_factor(X, method.beta) if method.adds_noise else None

    level1 = np.empty((B1, sample.T))
    pooled = None if B2 is None else np.empty((B1, B2))
    for b in range(B1):
        Xb = _draw(X, method, rng.child(ROLE_LEVEL1, b), None, factor)
        level1[b] = statistic_values(stat, Xb, grid)
        if B2 is not None:
            block = _draw(Xb, method, rng.child(ROLE_LEVEL2, b), B2)
            second = _batch_statistic(stat, block, grid)
            pooled[b] = distances_to(second, level1[b], grid, metric)
    single = distances_to(level1, estimate, grid, metric)
    return _Levels(estimate, level1, single, None if pooled is None else pooled.ravel())


def single_bootstrap(sample: FunctionalSample, stat: StatisticKind, metric: MetricKind,
                     method: BootstrapMethod, B1: int, rng: RngStream) -> BootstrapDistances:
    """Distances ``D(theta_b, theta_hat)`` for ``b = 1..B1``."""
    lv = _run_levels(sample, stat, metric, method, B1, None, rng)
    return BootstrapDistances("single", lv.single, lv.level1)


def double_bootstrap(sample: FunctionalSample, stat: StatisticKind, metric: MetricKind,
                     method: BootstrapMethod, B1: int, B2: int, rng: RngStream) -> BootstrapDistances:
    """Pooled ``B1 * B2`` distances ``D(theta_b_eta, theta_b)`` (row-major in ``b``)."""
    lv = _run_levels(sample, stat, metric, method, B1, B2, rng)
    return BootstrapDistances("double", lv.pooled, lv.level1)


def _order_index(delta: float, m: int) -> int:
    # 1-based rank ceil((1 - delta) * m), guarded against representation error
    k = int(np.ceil(round((1.0 - delta) * m, 9)))
    return min(max(k, 1), m)


def cutoff(distances, delta: float) -> float:
    """The ``ceil((1 - delta) * M)``-th smallest of the ``M`` distances."""
    d = distances.distances if isinstance(distances, BootstrapDistances) else np.asarray(distances)
    if d.size == 0:
        raise ValueError("cannot take a cut-off of an empty distance set")
    if not (0.0 < delta < 1.0):
        raise InfeasibleParameterError(f"delta must lie in (0, 1), got {delta}", "delta")
    k = _order_index(delta, d.size)
    return float(np.partition(d, k - 1)[k - 1])


def cutoffs(distances: np.ndarray, levels) -> np.ndarray:
    """Cut-offs for several nominal levels ``1 - delta`` from one sort."""
    srt = np.sort(np.asarray(distances))
    return np.array([srt[_order_index(1.0 - lv, srt.size) - 1] for lv in levels])


def covers(sample_estimate: Curve, target: Curve, cut: float, metric: MetricKind) -> bool:
    """True iff ``D(sample_estimate, target) <= cut`` (closed inequality)."""
    check_same_grid(sample_estimate.grid, target.grid)
    return distance(sample_estimate, target, metric) <= cut


# -- bands ------------------------------------------------------------------------

def _band(grid: Grid, estimate: np.ndarray, level1: np.ndarray, single: np.ndarray,
          cut: float, level: float, label: str) -> ConfidenceBand:
    accepted = level1[single <= cut]
    degenerate = accepted.shape[0] == 0
    if degenerate:
        accepted = level1[[int(np.argmin(single))]]
        log.warning("%s band at level %g accepted no bootstrap curve; using the nearest one",
                    label, level)
    # the estimate sits at distance 0 from itself and is always inside
    stack = np.vstack([estimate[None, :], accepted])
    return ConfidenceBand(
        estimate=Curve(grid, estimate),
        lower=Curve(grid, stack.min(axis=0)),
        upper=Curve(grid, stack.max(axis=0)),
        cutoff=float(cut),
        level=level,
        method=label,
        accepted=int(0 if degenerate else accepted.shape[0]),
        degenerate=degenerate,
    )


def bootstrap_bands(sample: FunctionalSample, stat: StatisticKind, metric: MetricKind,
                    method: BootstrapMethod, level: float, B1: int, B2: int | None,
                    rng: RngStream) -> dict:
    """Single (and, when ``B2`` is given, double) bands from one shared run.

    Both bands are envelopes of the first-level estimates within the
    cut-off; they differ only in where the cut-off comes from.
    """
    if not (0.0 < level < 1.0):
        raise InfeasibleParameterError(f"level must lie in (0, 1), got {level}", "level")
    lv = _run_levels(sample, stat, metric, method, B1, B2, rng)
    bands = {"single": _band(sample.grid, lv.estimate, lv.level1, lv.single,
                             cutoff(lv.single, 1.0 - level), level, "single")}
    if B2 is not None:
        bands["double"] = _band(sample.grid, lv.estimate, lv.level1, lv.single,
                                cutoff(lv.pooled, 1.0 - level), level, "double")
    return bands


def confidence_band(sample: FunctionalSample, stat: StatisticKind, metric: MetricKind,
                    method: BootstrapMethod, level: float, B1: int, B2: int | None = None,
                    rng: RngStream | None = None) -> ConfidenceBand:
    rng = rng or RngStream(0)
    bands = bootstrap_bands(sample, stat, metric, method, level, B1, B2, rng)
    return bands["double" if B2 is not None else "single"]
