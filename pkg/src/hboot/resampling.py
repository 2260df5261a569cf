"""Seeded nonparametric bootstrap of the mean or median of an index sample."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, _rng
from .errors import DomainError
from .indices import IndexSample

__all__ = [
    "StatisticKind",
    "BootstrapConfig",
    "BootstrapDistribution",
    "statistic",
    "resample_once",
    "bootstrap_distribution",
    "bias",
    "std_error",
]


class StatisticKind(str, enum.Enum):
    MEAN = "mean"
    MEDIAN = "median"

    @property
    def code(self) -> int:
        return _kernels.MEAN if self is StatisticKind.MEAN else _kernels.MEDIAN


@dataclass(frozen=True)
class BootstrapConfig:
    b: int = 1000
    seed: int = 0
    statistic: StatisticKind = StatisticKind.MEAN

    def __post_init__(self):
        if int(self.b) != self.b or self.b < 1:
            raise DomainError(f"number of bootstrap samples must be an integer >= 1, got {self.b!r}")
        if not 0 <= int(self.seed) <= _rng.MASK64:
            raise DomainError("seed must fit in an unsigned 64-bit integer")
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "statistic", StatisticKind(self.statistic))


@dataclass(frozen=True, eq=False)
class BootstrapDistribution:
    """Sorted bootstrap replicates of a statistic plus the original estimate.

    ``sample`` keeps the resampled values (needed only for jackknife
    acceleration); it is not part of the distribution's identity.
    """

    statistic: StatisticKind
    original_estimate: float
    replicates: np.ndarray
    seed: int
    sample_size: int
    sample: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        reps = np.array(self.replicates, dtype=np.float64)
        if reps.ndim != 1 or reps.size == 0:
            raise DomainError("replicates must be a non-empty 1-d sequence")
        if np.any(np.diff(reps) < 0):
            raise DomainError("replicates must be sorted non-decreasing")
        reps.setflags(write=False)
        object.__setattr__(self, "replicates", reps)
        object.__setattr__(self, "statistic", StatisticKind(self.statistic))
        if self.sample is not None:
            s = np.array(self.sample, dtype=np.float64)
            s.setflags(write=False)
            object.__setattr__(self, "sample", s)

    @property
    def b(self) -> int:
        return int(self.replicates.size)

    def __eq__(self, other):
        if not isinstance(other, BootstrapDistribution):
            return NotImplemented
        return (self.statistic == other.statistic
                and self.original_estimate == other.original_estimate
                and self.seed == other.seed
                and self.sample_size == other.sample_size
                and np.array_equal(self.replicates, other.replicates))

    __hash__ = None


def statistic(values, kind: StatisticKind | str) -> float:
    """Mean or median with the exact arithmetic the kernels use."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise DomainError("statistic of an empty sample")
    return float(_kernels._numpy.row_statistic(arr[None, :], StatisticKind(kind).code)[0])


def _values(sample) -> np.ndarray:
    arr = sample.array if isinstance(sample, IndexSample) else np.asarray(sample, dtype=np.float64)
    if arr.size == 0:
        raise DomainError("cannot resample an empty sample")
    return arr


def resample_once(sample: IndexSample, rng: _rng.SplitMix64) -> IndexSample:
    """Draw ``n`` values uniformly with replacement; advances ``rng``."""
    arr = _values(sample)
    idx = rng.indices(arr.size, arr.size)
    return IndexSample(sample.field_id, tuple(arr[idx].tolist()), sample.kind)


def replicate_keys(seed: int, b: int) -> np.ndarray:
    """Stream key of every replicate: child ``i`` of ``seed``."""
    return _rng.derive_many(np.uint64(seed), np.arange(b, dtype=np.uint64))


def bootstrap_distribution(sample, config: BootstrapConfig = BootstrapConfig(), *,
                           backend: str | None = None, threads: int = 1) -> BootstrapDistribution:
    """Bootstrap distribution of ``config.statistic`` over ``sample``.

    Replicate ``i`` is computed from the SplitMix64 stream keyed
    ``derive(config.seed, i)``, so the result depends only on the sample
    (in its given order) and the config.
    """
    arr = _values(sample)
    kind = config.statistic
    kernels = _kernels.get(backend)
    reps = kernels.bootstrap_replicates(arr, replicate_keys(config.seed, config.b), kind.code,
                                        threads=threads)
    return BootstrapDistribution(
        statistic=kind,
        original_estimate=statistic(arr, kind),
        replicates=np.sort(reps),
        seed=config.seed,
        sample_size=int(arr.size),
        sample=arr,
    )


def replicate_mean(dist: BootstrapDistribution) -> float:
    reps = dist.replicates
    if reps[0] == reps[-1]:
        return float(reps[0])
    return float(np.mean(reps))


def bias(dist: BootstrapDistribution) -> float:
    """Mean of the replicates minus the original estimate."""
    return replicate_mean(dist) - dist.original_estimate


def std_error(dist: BootstrapDistribution) -> float:
    """Standard deviation of the replicates with a ``B - 1`` denominator."""
    reps = dist.replicates
    if reps.size < 2:
        raise DomainError("standard error needs at least 2 replicates")
    if reps[0] == reps[-1]:
        return 0.0
    dev = reps - replicate_mean(dist)
    return math.sqrt(float(np.dot(dev, dev)) / (reps.size - 1))
