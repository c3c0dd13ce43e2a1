"""LP solve on a :class:`SparseProblem`: presolve, standard form, dual mapping.

Presolve does exactly two safe reductions — substituting fixed columns
(``lb == ub``) into the right-hand side and dropping rows left empty by
that substitution — so the mapping from kernel duals back to named rows
stays one-to-one (dropped rows get dual 0).
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from . import _kernel
from .problem import (
    EQ, GE, LE,
    INFEASIBLE, ITERATION_LIMIT, OPTIMAL, UNBOUNDED,
    SolveResult, SolverOptions, SparseProblem,
)

_STATUS_MAP = {
    _kernel.ST_OPTIMAL: OPTIMAL,
    _kernel.ST_INFEASIBLE: INFEASIBLE,
    _kernel.ST_UNBOUNDED: UNBOUNDED,
    _kernel.ST_ITERLIMIT: ITERATION_LIMIT,
}


def solve_lp(problem: SparseProblem,
             options: Optional[SolverOptions] = None) -> SolveResult:
    """Solve the continuous relaxation; integrality marks are ignored."""
    opts = options or SolverOptions()
    A, sense, rhs, lb, ub, obj, _ = problem.arrays()
    m, n = A.shape
    col_names = problem.col_names()
    row_names = problem.row_names()

    # -- presolve: substitute fixed columns ------------------------------
    fixed = ~(ub - lb > 0.0)
    offset = problem.objective_offset
    rhs_eff = rhs.copy()
    if fixed.any():
        vals = lb[fixed]
        offset += float(obj[fixed] @ vals)
        if m:
            rhs_eff -= A[:, fixed] @ vals
    keep_cols = np.flatnonzero(~fixed)
    A_k = A[:, keep_cols]

    # -- presolve: rows with no remaining support ------------------------
    row_support = (A_k != 0.0).any(axis=1) if len(keep_cols) else np.zeros(m, dtype=bool)
    keep_rows = []
    for i in range(m):
        if row_support[i]:
            keep_rows.append(i)
            continue
        r = rhs_eff[i]
        tol = opts.feas_tol * 100.0 * (1.0 + abs(rhs[i]))
        if sense[i] == LE:
            bad = r < -tol
            mult = -1.0
        elif sense[i] == GE:
            bad = r > tol
            mult = 1.0
        else:
            bad = abs(r) > tol
            mult = 1.0 if r > 0 else -1.0
        if bad:
            res = SolveResult(status=INFEASIBLE)
            res.farkas = {row_names[i]: mult}
            return res
    keep_rows = np.asarray(keep_rows, dtype=np.int64)

    values = {name: float(lb[j]) for j, name in enumerate(col_names) if fixed[j]}
    duals = {name: 0.0 for name in row_names}

    if len(keep_cols) == 0:
        res = SolveResult(status=OPTIMAL, objective=offset, values=values,
                          duals=duals)
        res.reduced_costs = {col_names[j]: float(obj[j]) for j in range(n)}
        return res

    mk = len(keep_rows)
    A_s = A_k[keep_rows, :] if mk else np.zeros((0, len(keep_cols)))
    b_s = rhs_eff[keep_rows]
    # logical columns: one per kept row; sense encoded in sign and bounds
    sig = np.ones(mk)
    s_lb = np.zeros(mk)
    s_ub = np.full(mk, np.inf)
    for k, i in enumerate(keep_rows):
        if sense[i] == GE:
            sig[k] = -1.0
        elif sense[i] == EQ:
            s_ub[k] = 0.0
    A_std = np.hstack([A_s, np.diag(sig)]) if mk else A_s
    lb_std = np.concatenate([lb[keep_cols], s_lb])
    ub_std = np.concatenate([ub[keep_cols], s_ub])
    c_std = np.concatenate([obj[keep_cols], np.zeros(mk)])

    out = _kernel.bounded_simplex(
        A_std, b_s, c_std, lb_std, ub_std,
        feas_tol=opts.feas_tol, opt_tol=opts.opt_tol,
        max_pivots=opts.max_pivots, refactor_every=opts.refactor_every,
        deterministic=opts.deterministic_pivot)

    status = _STATUS_MAP[out["status"]]
    res = SolveResult(status=status, pivots=out["pivots"])

    if status == INFEASIBLE:
        y1 = out["farkas"]
        res.farkas = {row_names[i]: float(y1[k])
                      for k, i in enumerate(keep_rows) if abs(y1[k]) > 1e-12}
        return res
    if status == UNBOUNDED:
        ray = out["ray"]
        res.ray = {col_names[j]: float(ray[k])
                   for k, j in enumerate(keep_cols) if abs(ray[k]) > 1e-12}
        return res

    x = out["x"]
    for k, j in enumerate(keep_cols):
        values[col_names[j]] = float(x[k])
    res.values = values
    res.objective = float(c_std[:len(keep_cols)] @ x[:len(keep_cols)]) + offset

    if out["y"] is not None:
        y = out["y"]
        for k, i in enumerate(keep_rows):
            duals[row_names[i]] = float(y[k])
        res.duals = duals
        y_all = np.zeros(m)
        y_all[keep_rows] = y
        d_all = obj - (y_all @ A if m else 0.0)
        res.reduced_costs = {name: float(d_all[j])
                             for j, name in enumerate(col_names)}
    return res
