"""Best-bound branch-and-bound over the LP solver.

Nodes carry only their bound patch (column -> (lb, ub)); the shared
problem object is patched before each node solve and restored after.
Selection is deterministic: nodes ordered by (LP bound, insertion id),
branching on the most fractional integer column with lowest-index ties.
"""

from __future__ import annotations

import heapq
import math
from typing import Optional

from .problem import (
    INFEASIBLE, ITERATION_LIMIT, OPTIMAL, UNBOUNDED,
    SolveResult, SolverOptions, SparseProblem,
)
from .simplex import solve_lp


def _fractionality(v: float) -> float:
    return abs(v - round(v))


def solve_milp(problem: SparseProblem,
               options: Optional[SolverOptions] = None) -> SolveResult:
    opts = options or SolverOptions()
    int_cols = problem.integer_cols()
    if not int_cols:
        return solve_lp(problem, opts)
    col_order = {name: k for k, name in enumerate(problem.col_names())}
    int_cols = sorted(int_cols, key=lambda nm: col_order[nm])

    work = problem.copy()
    orig_bounds = {nm: work.bounds(nm) for nm in int_cols}

    def node_solve(patch: dict[str, tuple[float, float]]) -> SolveResult:
        for nm, (l, u) in patch.items():
            work.set_bounds(nm, l, u)
        try:
            return solve_lp(work, opts)
        finally:
            for nm in patch:
                work.set_bounds(nm, *orig_bounds[nm])

    root = node_solve({})
    if root.status in (INFEASIBLE, UNBOUNDED):
        return root
    if root.status == ITERATION_LIMIT:
        return SolveResult(status=ITERATION_LIMIT, pivots=root.pivots)

    incumbent: Optional[SolveResult] = None
    incumbent_obj = math.inf
    # heap entries: (lp bound, insertion id, patch, lp values)
    heap: list[tuple[float, int, dict, dict]] = []
    counter = 0
    heapq.heappush(heap, (root.objective, counter, {}, root.values))
    nodes = 0
    pivots = root.pivots
    best_bound = root.objective

    def gap_tol() -> float:
        if incumbent is None:
            return 0.0
        return max(opts.mip_abs_gap, opts.mip_rel_gap * abs(incumbent_obj))

    while heap:
        bound, _, patch, values = heapq.heappop(heap)
        best_bound = bound
        if incumbent is not None and bound >= incumbent_obj - gap_tol():
            break
        nodes += 1
        if nodes > opts.max_nodes:
            break

        fracs = [(nm, values.get(nm, 0.0)) for nm in int_cols]
        fracs = [(nm, v) for nm, v in fracs if _fractionality(v) > opts.int_tol]
        if not fracs:
            if bound < incumbent_obj - opts.mip_abs_gap:
                res = SolveResult(status=OPTIMAL, objective=bound,
                                  values=dict(values))
                incumbent = res
                incumbent_obj = bound
            continue
        # most fractional; ties resolved toward the earliest column
        nm, v = max(fracs,
                    key=lambda it: (min(_fractionality(it[1]),
                                        1.0 - _fractionality(it[1])),
                                    -col_order[it[0]]))
        lo0, up0 = orig_bounds[nm]
        cur_lo, cur_up = patch.get(nm, (lo0, up0))
        down = dict(patch)
        down[nm] = (cur_lo, min(cur_up, math.floor(v)))
        up = dict(patch)
        up[nm] = (max(cur_lo, math.ceil(v)), cur_up)
        for child in (down, up):
            l, u = child[nm]
            if l > u:
                continue
            sub = node_solve(child)
            pivots += sub.pivots
            if sub.status == ITERATION_LIMIT:
                return SolveResult(status=ITERATION_LIMIT, pivots=pivots,
                                   nodes=nodes)
            if sub.status != OPTIMAL:
                continue
            if incumbent is not None and sub.objective >= incumbent_obj - gap_tol():
                continue
            counter += 1
            heapq.heappush(heap, (sub.objective, counter, child, sub.values))

    if incumbent is None:
        if nodes > opts.max_nodes:
            return SolveResult(status=ITERATION_LIMIT, pivots=pivots, nodes=nodes)
        return SolveResult(status=INFEASIBLE, pivots=pivots, nodes=nodes)

    if not heap and best_bound < incumbent_obj:
        best_bound = incumbent_obj

    # clean the incumbent: pin integers to rounded values and re-solve the
    # LP so the continuous part is consistent and duals are available
    pin = {nm: (round(values_of(incumbent, nm)),) * 2 for nm in int_cols}
    final = node_solve({nm: (float(l), float(u)) for nm, (l, u) in pin.items()})
    pivots += final.pivots
    if final.status == OPTIMAL:
        result = final
    else:
        result = incumbent
    result.status = OPTIMAL if nodes <= opts.max_nodes else ITERATION_LIMIT
    result.pivots = pivots
    result.nodes = nodes
    result.best_bound = min(best_bound, result.objective)
    return result


def values_of(res: SolveResult, name: str) -> float:
    return res.values.get(name, 0.0)
