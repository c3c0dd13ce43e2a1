"""Sparse linear and mixed-integer programming kernel."""

from .problem import (  # noqa: F401
    SparseProblem,
    SolveResult,
    SolverOptions,
    LE,
    GE,
    EQ,
    OPTIMAL,
    INFEASIBLE,
    UNBOUNDED,
    ITERATION_LIMIT,
)
from .simplex import solve_lp  # noqa: F401
from .branch_bound import solve_milp  # noqa: F401
