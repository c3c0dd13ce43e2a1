"""Plan reports: building, checking, serializing and comparing results."""

from .checks import verify_plan_invariants
from .compare import RunComparison, compare_runs, format_comparison
from .plan import (
    SCHEMA_VERSION, PlanReport, build_plan, plan_from_monolithic,
    plan_from_nbd,
)
from .tables import format_report, text_table
from .writer import (
    CSV_FILES, read_report, render_plan_json, write_report,
)

__all__ = [
    "SCHEMA_VERSION", "CSV_FILES",
    "PlanReport", "RunComparison",
    "build_plan", "plan_from_monolithic", "plan_from_nbd",
    "write_report", "read_report", "render_plan_json",
    "format_report", "format_comparison", "text_table",
    "compare_runs", "verify_plan_invariants",
]
