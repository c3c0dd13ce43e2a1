"""Optimization problem builders: monolithic horizon and per-year stages."""

from .monolithic import build_monolithic  # noqa: F401
from .stages import StageProblem, build_stage, build_all_stages  # noqa: F401
from .state import initial_state, state_elements  # noqa: F401
from .objective import (  # noqa: F401
    adjusted_investment_cost, cost_breakdown, cost_breakdown_by_year,
)
from .explain import explain_key, list_families  # noqa: F401
