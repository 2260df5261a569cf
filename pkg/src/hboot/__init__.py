"""Bootstrap confidence intervals for h-type bibliometric indices."""

from ._kernels import BACKEND
from .coverage import CoverageConfig, CoverageReport, run_coverage
from .errors import DomainError, HbootError, InfeasibleConfigError, ValidationError
from .indices import (
    CitationProfile,
    FieldNorms,
    IndexKind,
    IndexSample,
    generalized_h,
    h_index,
    n_index,
    normalization_factor,
    normalized_h,
    summary_stats,
    theoretical_h_iglesias,
)
from .intervals import ConfidenceInterval, IntervalMethod, interval, inverse_normal_cdf
from .resampling import (
    BootstrapConfig,
    BootstrapDistribution,
    StatisticKind,
    bias,
    bootstrap_distribution,
    std_error,
)

__version__ = "0.1.0"
