"""Single and double bootstrap confidence bands for functional data.

The numeric hot loops (depth scores and pairwise distances) run in a
compiled extension when it is available and in numpy otherwise; set
``FDBOOT_PURE_PYTHON=1`` to force the numpy path.  ``fdboot.kernels.BACKEND``
says which one is active.
"""
__version__ = "0.1.0"

from .core import CovMatrix, Curve, FunctionalSample, Grid, build_sample, empirical_covariance
from .errors import (
    DimensionError,
    FactorizationError,
    FdError,
    GridMismatchError,
    InfeasibleParameterError,
    InsufficientSampleError,
    NonFiniteError,
)
from .metrics import MetricKind, distance, l2_distance, linf_distance
from .rng import RngStream
from .stats import (
    DepthMethod,
    DepthScores,
    StatisticKind,
    alpha_radius_depth,
    depth_scores,
    evaluate_statistic,
    fm_depth,
    functional_mean,
    functional_median,
    functional_variance,
    trimmed_mean,
)
from .boot import (
    BootstrapDistances,
    BootstrapMethod,
    ConfidenceBand,
    bootstrap_bands,
    confidence_band,
    cutoff,
    double_bootstrap,
    iid_resample,
    single_bootstrap,
    smooth_resample,
)
from .sim import (
    CoverageTable,
    ExperimentConfig,
    GpSpec,
    KernelKind,
    population_target,
    run_coverage_experiment,
    run_sensitivity,
    simulate_gp,
)
