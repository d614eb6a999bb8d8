"""Gaussian-process samples and Monte Carlo coverage experiments."""
from __future__ import annotations

import enum
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .boot import BootstrapMethod, _run_levels, cutoffs
from .core import Curve, FunctionalSample, Grid, psd_factor
from .errors import FactorizationError, FdError
from .metrics import MetricKind, distances_to
from .rng import ROLE_SIMULATION, RngStream
from .stats import StatisticKind, StatKind, statistic_values

log = logging.getLogger(__name__)

DEFAULT_LEVELS = tuple(round(0.50 + 0.05 * i, 2) for i in range(10))


class KernelKind(enum.Enum):
    EXPONENTIAL = "exponential"
    BROWNIAN = "brownian"


@dataclass(frozen=True)
class GpSpec:
    """Gaussian process ``m(t) + noise`` with ``m(t) = 11 t (1 - t)``.

    ``kernel`` is either ``exp(-|s - t| / scale)`` or ``min(s, t)``; the
    covariance is multiplied by ``variance`` (0 gives noise-free curves).
    """

    n: int = 100
    grid: Grid = field(default_factory=Grid.uniform)
    kernel: KernelKind = KernelKind.EXPONENTIAL
    scale: float = 0.3
    variance: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise FdError(f"n must be positive, got {self.n}")
        if self.kernel is KernelKind.EXPONENTIAL and not self.scale > 0:
            raise FdError(f"exponential kernel scale must be > 0, got {self.scale}")
        if self.variance < 0:
            raise FdError(f"variance must be >= 0, got {self.variance}")

    def covariance(self) -> np.ndarray:
        t = self.grid.points
        if self.kernel is KernelKind.EXPONENTIAL:
            k = np.exp(-np.abs(t[:, None] - t[None, :]) / self.scale)
        else:
            k = np.minimum(t[:, None], t[None, :])
        return self.variance * k


def gp_mean(t):
    """``0.95 * 10 t (1 - t) + 0.05 * 30 t (1 - t)``, i.e. ``11 t (1 - t)``."""
    t = np.asarray(t, dtype=float)
    return 11.0 * t * (1.0 - t)


def _factor(spec: GpSpec) -> np.ndarray:
    cov = spec.covariance()
    eigval = np.linalg.eigvalsh(cov)
    smallest = float(eigval[0])
    if smallest < -1e-8 * max(float(eigval[-1]), 1.0):
        raise FactorizationError(
            f"kernel matrix is not positive semidefinite (smallest eigenvalue {smallest:.3e})",
            smallest,
        )
    return psd_factor(cov)


def simulate_gp(spec: GpSpec, rng: RngStream) -> FunctionalSample:
    """``n`` independent curves ``m(grid) + L z`` with ``L L^T`` the kernel matrix."""
    L = _factor(spec)
    z = rng.generator().standard_normal((spec.n, len(spec.grid)))
    values = gp_mean(spec.grid.points) + z @ L.T
    return FunctionalSample(spec.grid, values)


def population_target(stat: StatisticKind, spec: GpSpec) -> Curve:
    """The population value of ``stat`` under ``spec``.

    Median and trimmed mean equal ``m(t)``: the Gaussian law is symmetric
    about its mean at every ``t``.
    """
    t = spec.grid.points
    if stat.kind is StatKind.VARIANCE:
        if spec.kernel is KernelKind.EXPONENTIAL:
            return Curve(spec.grid, np.full(t.size, float(spec.variance)))
        if spec.kernel is KernelKind.BROWNIAN:
            return Curve(spec.grid, spec.variance * t)
        raise FdError(f"no closed-form variance for kernel {spec.kernel}")
    if stat.kind in (StatKind.MEAN, StatKind.MEDIAN, StatKind.TRIMMED_MEAN):
        return Curve(spec.grid, gp_mean(t))
    raise FdError(f"no population target for {stat.kind}")


# -- coverage experiments ------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    gp: GpSpec = field(default_factory=GpSpec)
    statistic: StatisticKind = field(default_factory=StatisticKind.mean)
    metric: MetricKind = MetricKind.L2
    bootstrap: BootstrapMethod = field(default_factory=BootstrapMethod.plain)
    B1: int = 399
    B2: int = 399
    R: int = 200
    nominal_levels: tuple = DEFAULT_LEVELS
    seed: int = 1

    def __post_init__(self):
        levels = tuple(float(x) for x in self.nominal_levels)
        object.__setattr__(self, "nominal_levels", levels)
        if not levels or any(not (0 < x < 1) for x in levels):
            raise FdError("nominal levels must lie in (0, 1)")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise FdError("nominal levels must be strictly increasing")
        for name in ("B1", "B2", "R"):
            if getattr(self, name) < 1:
                raise FdError(f"{name} must be positive")
        self.statistic.check_feasible(self.gp.n)

    def summary(self) -> dict:
        depth = self.statistic.depth
        return {
            "statistic": self.statistic.kind.value,
            "depth": "none" if depth is None else depth.kind.value,
            "metric": self.metric.value,
            "bootstrap": self.bootstrap.label,
            "n": self.gp.n,
            "B1": self.B1,
            "B2": self.B2,
            "R": self.R,
        }


@dataclass(frozen=True)
class CoverageRow:
    config: dict
    method: str
    nominal: float
    empirical: float
    mc_stderr: float


@dataclass(frozen=True, eq=False)
class CoverageTable:
    rows: list

    COLUMNS = ("statistic", "depth", "metric", "bootstrap", "method", "n",
               "B1", "B2", "R", "nominal", "empirical", "mc_stderr")

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def records(self):
        for row in self.rows:
            rec = dict(row.config)
            rec.update(method=row.method, nominal=row.nominal,
                       empirical=row.empirical, mc_stderr=row.mc_stderr)
            yield {k: rec[k] for k in self.COLUMNS}

    def select(self, method=None, **config) -> "CoverageTable":
        keep = [r for r in self.rows
                if (method is None or r.method == method)
                and all(r.config.get(k) == v for k, v in config.items())]
        return CoverageTable(keep)

    def empirical(self, method: str, **config) -> np.ndarray:
        return np.array([r.empirical for r in self.select(method, **config).rows])

    def check_monotone(self):
        """Raise if coverage leaves [0, 1] or decreases in the nominal level within a group."""
        groups = {}
        for r in self.rows:
            key = (tuple(sorted(r.config.items())), r.method)
            groups.setdefault(key, []).append(r)
        for key, rows in groups.items():
            rows = sorted(rows, key=lambda r: r.nominal)
            emp = [r.empirical for r in rows]
            if any(not (0.0 <= e <= 1.0) for e in emp):
                raise AssertionError(f"coverage outside [0, 1] in {key}")
            if any(b < a for a, b in zip(emp, emp[1:])):
                raise AssertionError(f"coverage decreases with nominal level in {key}")

    def __add__(self, other):
        return CoverageTable(self.rows + other.rows)


def replication_covers(config: ExperimentConfig, r: int) -> np.ndarray:
    """Coverage indicators for replication ``r``: shape ``(2, levels)``, single then double."""
    base = RngStream(config.seed, (r,))
    sample = simulate_gp(config.gp, base.child(ROLE_SIMULATION))
    target = population_target(config.statistic, config.gp).values
    lv = _run_levels(sample, config.statistic, config.metric, config.bootstrap,
                     config.B1, config.B2, base)
    d0 = float(distances_to(lv.estimate, target, sample.grid, config.metric)[0])
    out = np.empty((2, len(config.nominal_levels)), dtype=bool)
    for row, dist in enumerate((lv.single, lv.pooled)):
        if d0 > 0 and not np.any(dist > 0):
            log.warning("replication %d: all %s distances are zero; counted as not covering",
                        r, ("single", "double")[row])
        out[row] = d0 <= cutoffs(dist, config.nominal_levels)
    return out


def _replication_chunk(args):
    config, reps = args
    return [replication_covers(config, r) for r in reps]


def default_workers() -> int:
    env = os.environ.get("FDBOOT_WORKERS")
    if env:
        return max(1, int(env))
    return 1


def _all_covers(config: ExperimentConfig, workers: int | None) -> np.ndarray:
    workers = default_workers() if workers is None else max(1, int(workers))
    reps = list(range(config.R))
    if workers == 1 or config.R == 1:
        results = [replication_covers(config, r) for r in reps]
    else:
        chunks = [reps[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_replication_chunk, [(config, c) for c in chunks]))
        by_rep = {}
        for chunk, part in zip(chunks, parts):
            by_rep.update(zip(chunk, part))
        results = [by_rep[r] for r in reps]  # fold in replication order
    return np.stack(results)


def run_coverage_experiment(config: ExperimentConfig, workers: int | None = None) -> CoverageTable:
    """Empirical coverage of single and double bootstrap bands over ``R`` replications.

    Each replication simulates a fresh sample, computes ``D(theta_hat,
    theta)`` and checks it against the cut-off of each method at each
    nominal level.  The result does not depend on ``workers``.
    """
    hits = _all_covers(config, workers)  # R x 2 x levels
    rate = hits.mean(axis=0)
    summary = config.summary()
    rows = []
    for m, method in enumerate(("single", "double")):
        for j, nominal in enumerate(config.nominal_levels):
            p = float(rate[m, j])
            rows.append(CoverageRow(summary, method, nominal, p,
                                    math.sqrt(p * (1 - p) / config.R)))
    table = CoverageTable(rows)
    table.check_monotone()
    return table


def run_sensitivity(config: ExperimentConfig, pairs, workers: int | None = None) -> CoverageTable:
    """One coverage row-group per ``(B1, B2)`` pair, all under the same seed."""
    table = CoverageTable([])
    for B1, B2 in pairs:
        table = table + run_coverage_experiment(replace(config, B1=B1, B2=B2), workers)
    return table
