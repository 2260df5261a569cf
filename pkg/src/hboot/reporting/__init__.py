"""Ingestion, report commands, serialisation and the interval chart."""

from .chart import emit_interval_chart, render_interval_chart
from .commands import (
    NORMALIZATIONS,
    TOTAL,
    CIReport,
    CoverageRun,
    FieldCI,
    RunConfig,
    pooled_sample,
    run_ci_command,
    run_coverage_command,
    run_normalize_command,
)
from .io import (
    LOAD_KINDS,
    Dataset,
    dataset_from_json,
    dataset_to_csv,
    dataset_to_json,
    fixture_path,
    load_dataset,
    load_norms,
    parse_dataset,
    write_atomic,
)
