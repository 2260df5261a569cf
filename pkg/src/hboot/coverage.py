"""Monte Carlo estimate of how often each interval method covers the truth.

The field sample is treated as a finite population.  Outer replication ``m``
draws ``n`` values with replacement from it using the stream
``derive(derive(seed, m), OUTER)``; its inner bootstrap uses replicate keys
under ``derive(derive(seed, m), INNER)``.  Each requested interval is then
classified as covering the population statistic, lying entirely above it
(lower miss) or entirely below it (upper miss).  Endpoints count as covered.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels, _rng
from ._table import Table, fmt
from .errors import DomainError
from .indices import IndexSample
from .intervals import IntervalMethod, check_feasible, interval
from .resampling import BootstrapConfig, BootstrapDistribution, StatisticKind, statistic

__all__ = [
    "CoverageConfig",
    "CoverageCell",
    "CoverageReport",
    "true_parameter",
    "outer_sample",
    "run_coverage",
    "format_coverage_table",
    "TABLE_METHOD_ORDER",
]

# Row order of the coverage table.
TABLE_METHOD_ORDER = (
    IntervalMethod.BASIC,
    IntervalMethod.PERCENTILE,
    IntervalMethod.BIAS_CORRECTED,
    IntervalMethod.NORMAL,
)


@dataclass(frozen=True)
class CoverageConfig:
    population: IndexSample
    sample_size: int
    outer_reps: int = 2000
    bootstrap: BootstrapConfig = BootstrapConfig()
    methods: tuple[IntervalMethod, ...] = tuple(IntervalMethod)
    levels: tuple[float, ...] = (0.90, 0.95)
    accelerate: bool = False

    def __post_init__(self):
        if self.sample_size < 2:
            raise DomainError(f"sample size must be >= 2, got {self.sample_size}")
        if self.outer_reps < 1:
            raise DomainError(f"outer replications must be >= 1, got {self.outer_reps}")
        methods = tuple(dict.fromkeys(IntervalMethod(m) for m in self.methods))
        levels = tuple(dict.fromkeys(float(lv) for lv in self.levels))
        if not methods or not levels:
            raise DomainError("at least one method and one level are required")
        object.__setattr__(self, "methods", methods)
        object.__setattr__(self, "levels", levels)

    def validate(self) -> None:
        for method in self.methods:
            for level in self.levels:
                check_feasible(method, level, self.bootstrap.b)


@dataclass(frozen=True)
class CoverageCell:
    method: IntervalMethod
    level: float
    statistic: StatisticKind
    covered: int
    below_lower: int
    above_upper: int

    @property
    def replications(self) -> int:
        return self.covered + self.below_lower + self.above_upper

    @property
    def observed_coverage(self) -> float:
        return self.covered / self.replications

    @property
    def lower_miss(self) -> float:
        return self.below_lower / self.replications

    @property
    def upper_miss(self) -> float:
        return self.above_upper / self.replications


@dataclass(frozen=True)
class CoverageReport:
    field_id: str
    statistic: StatisticKind
    true_parameter: float
    cells: tuple[CoverageCell, ...]
    outer_reps: int
    master_seed: int
    sample_size: int
    b: int

    def cell(self, method, level) -> CoverageCell:
        method = IntervalMethod(method)
        for c in self.cells:
            if c.method is method and c.level == level:
                return c
        raise KeyError((method, level))


def true_parameter(population: IndexSample, kind: StatisticKind | str) -> float:
    if len(population.values) == 0:
        raise DomainError("empty population")
    return statistic(population.array, kind)


def outer_sample(population: IndexSample, n: int, seed: int, m: int) -> np.ndarray:
    """The size-``n`` draw of outer replication ``m`` (scalar reference path)."""
    pop = population.array
    g = _rng.SplitMix64(_rng.derive_path(seed, m, _rng.OUTER))
    return pop[g.indices(pop.size, n)]


def run_coverage(config: CoverageConfig, *, backend: str | None = None,
                 threads: int = 1) -> CoverageReport:
    config.validate()
    boot = config.bootstrap
    kind = boot.statistic
    pop = config.population.array
    theta = true_parameter(config.population, kind)
    m_total = config.outer_reps
    nodes = _rng.derive_many(np.uint64(boot.seed), np.arange(m_total, dtype=np.uint64))
    estimates, reps = _kernels.get(backend).coverage_replicates(
        pop, config.sample_size, nodes, boot.b, kind.code, threads=threads)

    combos = [(mt, lv) for mt in config.methods for lv in config.levels]
    counts = np.zeros((len(combos), 3), dtype=np.int64)
    for m in range(m_total):
        sample = None
        if config.accelerate:
            sample = outer_sample(config.population, config.sample_size, boot.seed, m)
        dist = BootstrapDistribution(kind, float(estimates[m]), reps[m], boot.seed,
                                     config.sample_size, sample)
        for j, (method, level) in enumerate(combos):
            ci = interval(dist, method, level, accelerate=config.accelerate)
            if theta < ci.lower:
                counts[j, 1] += 1
            elif theta > ci.upper:
                counts[j, 2] += 1
            else:
                counts[j, 0] += 1

    cells = tuple(
        CoverageCell(method, level, kind, int(c[0]), int(c[1]), int(c[2]))
        for (method, level), c in zip(combos, counts)
    )
    return CoverageReport(config.population.field_id, kind, theta, cells, m_total,
                          boot.seed, config.sample_size, boot.b)


def _pct(x: float) -> str:
    return fmt(100.0 * x, 1)


def format_coverage_table(reports: Sequence[CoverageReport] | Iterable[CoverageReport]) -> Table:
    """Coverage table, one row per (level, field, method).

    For each statistic present, mean first, the observed coverage and the
    lower and upper miss rates as percentages with one decimal.
    """
    reports = list(reports)
    if not reports or not any(r.cells for r in reports):
        raise DomainError("no coverage cells to format")
    stats = [s for s in StatisticKind if any(r.statistic is s for r in reports)]
    fields = list(dict.fromkeys(r.field_id for r in reports))
    levels = sorted({c.level for r in reports for c in r.cells})
    present = {c.method for r in reports for c in r.cells}
    methods = [m for m in TABLE_METHOD_ORDER if m in present]

    lookup = {}
    for r in reports:
        for c in r.cells:
            lookup[(r.field_id, c.level, c.method, r.statistic)] = c

    columns = ["Level", "Science Field", "Bootstrap Method"]
    for s in stats:
        name = s.value.capitalize()
        columns += [f"OC ({name})", f"Miss Lower ({name})", f"Miss Upper ({name})"]
    table = Table(columns)
    for level in levels:
        for field_id in fields:
            for method in methods:
                row = [f"{100.0 * level:.6g}%", field_id, method.label]
                hit = False
                for s in stats:
                    c = lookup.get((field_id, level, method, s))
                    if c is None:
                        row += ["", "", ""]
                    else:
                        hit = True
                        row += [_pct(c.observed_coverage), _pct(c.lower_miss), _pct(c.upper_miss)]
                if hit:
                    table.rows.append(row)
    return table
