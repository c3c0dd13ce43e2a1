from .cuts import BendersCut, CutPool
from .engine import (
    CONVERGED, ITERATION_LIMIT, STAGE_FAILURE,
    IterationRecord, NBDResult, NestedBenders, solve_nested_benders,
)

__all__ = [
    "BendersCut", "CutPool",
    "CONVERGED", "ITERATION_LIMIT", "STAGE_FAILURE",
    "IterationRecord", "NBDResult", "NestedBenders", "solve_nested_benders",
]
