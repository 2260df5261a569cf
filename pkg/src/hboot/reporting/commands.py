"""The ci, normalize and coverage commands as library calls."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .._rng import field_seed
from .._table import Table, fmt
from ..coverage import CoverageConfig, CoverageReport, format_coverage_table, run_coverage
from ..errors import ValidationError
from ..indices import (
    IndexKind,
    IndexSample,
    generalized_h,
    n_index,
    normalization_factor,
    normalized_h,
)
from ..intervals import ConfidenceInterval, IntervalMethod, check_feasible, interval
from ..resampling import (
    BootstrapConfig,
    BootstrapDistribution,
    StatisticKind,
    bias,
    bootstrap_distribution,
    replicate_mean,
    std_error,
)
from .io import Dataset

__all__ = [
    "RunConfig",
    "FieldCI",
    "CIReport",
    "CoverageRun",
    "TABLE_INTERVAL_ORDER",
    "TOTAL",
    "pooled_sample",
    "run_ci_command",
    "run_normalize_command",
    "run_coverage_command",
    "NORMALIZATIONS",
]

TOTAL = "TOTAL"
# Column order of the interval table.
TABLE_INTERVAL_ORDER = (
    IntervalMethod.NORMAL,
    IntervalMethod.BASIC,
    IntervalMethod.PERCENTILE,
    IntervalMethod.BIAS_CORRECTED,
)
NORMALIZATIONS = ("iglesias", "n_index", "generalized")
INTERVAL_PLACES = 2
MOMENT_PLACES = 3


@dataclass(frozen=True)
class RunConfig:
    b: int = 1000
    seed: int = 0
    levels: tuple[float, ...] = (0.90, 0.95)
    methods: tuple[IntervalMethod, ...] = TABLE_INTERVAL_ORDER
    statistics: tuple[StatisticKind, ...] = (StatisticKind.MEAN, StatisticKind.MEDIAN)
    accelerate: bool = False
    include_total: bool = True
    normalization: str = "iglesias"
    outer_reps: int = 2000
    sample_size: int | None = None
    threads: int = 1
    backend: str | None = None

    def __post_init__(self):
        levels = tuple(sorted(dict.fromkeys(float(x) for x in self.levels)))
        if not levels or any(not 0 < x < 1 for x in levels):
            raise ValidationError("levels must lie in (0, 1)")
        methods = tuple(dict.fromkeys(IntervalMethod(m) for m in self.methods))
        stats = tuple(s for s in StatisticKind if s in {StatisticKind(x) for x in self.statistics})
        if not methods or not stats:
            raise ValidationError("at least one method and one statistic are required")
        if self.b < 1:
            raise ValidationError("B must be >= 1")
        if self.outer_reps < 1:
            raise ValidationError("coverage replications must be >= 1")
        if self.sample_size is not None and self.sample_size < 2:
            raise ValidationError("coverage sample size must be >= 2")
        if self.seed < 0:
            raise ValidationError("seed must be non-negative")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "methods", methods)
        object.__setattr__(self, "statistics", stats)

    def check_feasible(self) -> None:
        for method in self.methods:
            for level in self.levels:
                check_feasible(method, level, self.b)


def pooled_sample(samples: dict[str, IndexSample]) -> IndexSample:
    """All fields concatenated into one pooled TOTAL sample."""
    parts = list(samples.values())
    kind = parts[0].kind if len({p.kind for p in parts}) == 1 else IndexKind.NORMALIZED_H
    values = tuple(v for p in parts for v in p.values)
    return IndexSample(TOTAL, values, kind)


def _with_total(ds: Dataset, config: RunConfig) -> list[IndexSample]:
    samples = list(ds.samples.values())
    if config.include_total and len(samples) >= 2:
        if TOTAL in ds.samples:
            raise ValidationError(f"field id {TOTAL!r} is reserved for the pooled row")
        samples.append(pooled_sample(ds.samples))
    return samples


# -- ci ------------------------------------------------------------------------


def _column(method: IntervalMethod, level: float) -> str:
    return f"{method.label} ({100.0 * level:.6g}%)"


@dataclass
class FieldCI:
    field_id: str
    distribution: BootstrapDistribution
    intervals: list[ConfidenceInterval]

    @property
    def statistic(self) -> StatisticKind:
        return self.distribution.statistic

    def get(self, method, level) -> ConfidenceInterval:
        method = IntervalMethod(method)
        for ci in self.intervals:
            if ci.method is method and ci.level == level:
                return ci
        raise KeyError((method, level))


@dataclass
class CIReport:
    config: RunConfig
    rows: list[FieldCI] = field(default_factory=list)
    index_kind: str = IndexKind.RAW_H.value

    def _methods(self):
        return [m for m in TABLE_INTERVAL_ORDER if m in self.config.methods]

    def to_table(self) -> Table:
        """Bootstrap moments then, per level, NB/BB/PB/BCa lower and upper bounds."""
        cols = ["Science Field", "Statistic", "n", "Estimate", "Bootstrap Mean", "Bias",
                "Std. Error"]
        for level in self.config.levels:
            for m in self._methods():
                c = _column(m, level)
                cols += [f"{c} Lower", f"{c} Upper"]
        table = Table(cols)
        for row in self.rows:
            d = row.distribution
            cells = [row.field_id, d.statistic.value, str(d.sample_size),
                     fmt(d.original_estimate, INTERVAL_PLACES), fmt(replicate_mean(d), INTERVAL_PLACES),
                     fmt(bias(d), MOMENT_PLACES), _se(d)]
            for level in self.config.levels:
                for m in self._methods():
                    ci = row.get(m, level)
                    cells += [fmt(ci.lower, INTERVAL_PLACES), fmt(ci.upper, INTERVAL_PLACES)]
            table.rows.append(cells)
        return table

    def to_csv(self) -> str:
        return self.to_table().to_csv()

    def to_json(self) -> str:
        c = self.config
        doc = {
            "command": "ci",
            "index_kind": self.index_kind,
            "b": c.b,
            "seed": c.seed,
            "levels": list(c.levels),
            "methods": [m.label for m in self._methods()],
            "rows": [],
        }
        for row in self.rows:
            d = row.distribution
            entry = {
                "field_id": row.field_id,
                "statistic": d.statistic.value,
                "n": d.sample_size,
                "estimate": _num(d.original_estimate, INTERVAL_PLACES),
                "bootstrap_mean": _num(replicate_mean(d), INTERVAL_PLACES),
                "bias": _num(bias(d), MOMENT_PLACES),
                "std_error": _num(std_error(d), MOMENT_PLACES) if d.b >= 2 else None,
                "intervals": {},
            }
            for level in c.levels:
                for m in self._methods():
                    ci = row.get(m, level)
                    entry["intervals"][_column(m, level)] = {
                        "lower": _num(ci.lower, INTERVAL_PLACES),
                        "upper": _num(ci.upper, INTERVAL_PLACES),
                        "clamped": ci.clamped,
                    }
            doc["rows"].append(entry)
        return json.dumps(doc, indent=2) + "\n"


def _se(d: BootstrapDistribution) -> str:
    return fmt(std_error(d), MOMENT_PLACES) if d.b >= 2 else ""


def _num(x: float, places: int):
    return float(fmt(x, places))


def run_ci_command(ds: Dataset, config: RunConfig) -> CIReport:
    """Bootstrap every field (plus TOTAL) and build every requested interval."""
    config.check_feasible()
    samples = _with_total(ds, config)
    kinds = {s.kind for s in ds.samples.values()}
    report = CIReport(config, index_kind=kinds.pop().value if len(kinds) == 1 else "mixed")
    for stat in config.statistics:
        for sample in samples:
            boot = BootstrapConfig(config.b, field_seed(config.seed, sample.field_id), stat)
            dist = bootstrap_distribution(sample, boot, backend=config.backend,
                                          threads=config.threads)
            cis = [interval(dist, m, level, accelerate=config.accelerate)
                   for level in config.levels for m in config.methods]
            report.rows.append(FieldCI(sample.field_id, dist, cis))
    return report


# -- normalize -----------------------------------------------------------------


def run_normalize_command(ds: Dataset, config: RunConfig) -> Dataset:
    """Replace each field's values by a field-normalised index."""
    kind = config.normalization
    if kind not in NORMALIZATIONS:
        raise ValidationError(f"unknown normalization {kind!r}; choose from {', '.join(NORMALIZATIONS)}")
    norms = ds.norms or {}
    if kind == "generalized":
        if not ds.profiles:
            raise ValidationError("generalized h needs citation profiles, not h values")
        fields = list(dict.fromkeys(p.field_id for p in ds.profiles))
    else:
        fields = ds.field_ids
    missing = [f for f in fields if f not in norms]
    if missing:
        raise ValidationError(f"no norms for field(s): {', '.join(missing)}")

    out = {}
    if kind == "generalized":
        for f in fields:
            profiles = [p for p in ds.profiles if p.field_id == f]
            nm = norms[f]
            out[f] = IndexSample(f, tuple(generalized_h(p, nm.c0, nm.n0) for p in profiles),
                                 IndexKind.GENERALIZED_H, tuple(p.researcher_id for p in profiles))
    else:
        for f, sample in ds.samples.items():
            if sample.kind is not IndexKind.RAW_H:
                raise ValidationError(f"field {f!r} is already normalised ({sample.kind.value})")
            nm = norms[f]
            if kind == "iglesias":
                factor = normalization_factor(nm)
                vals = tuple(normalized_h(h, factor) for h in sample.values)
                new_kind = IndexKind.NORMALIZED_H
            else:
                vals = tuple(n_index(h, nm.journal_h_max) for h in sample.values)
                new_kind = IndexKind.N_INDEX
            out[f] = IndexSample(f, vals, new_kind, sample.ids)
    return Dataset(out, {f: norms[f] for f in out}, None, ds.reference_field)


# -- coverage ------------------------------------------------------------------


@dataclass
class CoverageRun:
    config: RunConfig
    reports: list[CoverageReport]

    def to_table(self) -> Table:
        return format_coverage_table(self.reports)

    def to_csv(self) -> str:
        return self.to_table().to_csv()

    def to_json(self) -> str:
        c = self.config
        doc = {
            "command": "coverage",
            "b": c.b,
            "seed": c.seed,
            "outer_reps": c.outer_reps,
            "populations": [
                {"field_id": r.field_id, "statistic": r.statistic.value,
                 "true_parameter": _num(r.true_parameter, INTERVAL_PLACES),
                 "sample_size": r.sample_size}
                for r in self.reports
            ],
            "rows": self.to_table().records(),
        }
        return json.dumps(doc, indent=2) + "\n"


def run_coverage_command(ds: Dataset, config: RunConfig) -> CoverageRun:
    config.check_feasible()
    populations = _with_total(ds, config)
    reports = []
    for pop in populations:
        n = config.sample_size or len(pop)
        for stat in config.statistics:
            boot = BootstrapConfig(config.b, field_seed(config.seed, pop.field_id), stat)
            cfg = CoverageConfig(pop, n, config.outer_reps, boot, config.methods, config.levels,
                                 config.accelerate)
            reports.append(run_coverage(cfg, backend=config.backend, threads=config.threads))
    return CoverageRun(config, reports)
