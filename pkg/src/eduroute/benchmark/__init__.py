"""Offline multiple-choice evaluation harness."""

from .harness import (
    ItemResult,
    SubjectReport,
    extract_answer,
    format_mcq_prompt,
    mcq_query,
    percent,
    run_suite,
)
from .suite import LETTERS, BenchmarkItem, Level, load_suite
from .tables import (
    HIGH_SUBJECTS,
    LEVEL_SUBJECTS,
    MIDDLE_SUBJECTS,
    PRIMARY_SUBJECTS,
    format_csv,
    format_table,
    reports_to_row,
)

__all__ = [
    "BenchmarkItem",
    "HIGH_SUBJECTS",
    "ItemResult",
    "LETTERS",
    "LEVEL_SUBJECTS",
    "Level",
    "MIDDLE_SUBJECTS",
    "PRIMARY_SUBJECTS",
    "SubjectReport",
    "extract_answer",
    "format_csv",
    "format_mcq_prompt",
    "format_table",
    "load_suite",
    "mcq_query",
    "percent",
    "reports_to_row",
    "run_suite",
]
