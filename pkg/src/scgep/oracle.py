"""Independent answers for small planning problems.

Two ways to solve a dataset that share no code with the decomposition:
``solve_monolithic`` hands the whole-horizon problem to the general
solver, and ``enumerate_tiny`` tries every feasible integral build
schedule outright, solving only the residual continuous problem for each.
Agreement of all three (these two plus the decomposition) on a fixture is
the strongest correctness evidence this package produces.
"""

from __future__ import annotations

import itertools
from typing import Optional

from .formulation import build_monolithic
from .keys import variable_key
from .milp import OPTIMAL, SolveResult, SolverOptions, solve_lp, solve_milp
from .model import SystemModel


def solve_monolithic(model: SystemModel,
                     options: Optional[SolverOptions] = None) -> SolveResult:
    return solve_milp(build_monolithic(model), options)


def _decision_years(model: SystemModel, g) -> list[int]:
    from .formulation.objective import can_operate_in_horizon
    return [y for y in model.time.years if can_operate_in_horizon(model, g, y)]


def _schedules(years: list[int], all_years, lifetime: int) -> list[tuple[int, ...]]:
    """Subsets of decision years whose operating windows cannot overlap."""
    idx = {y: k for k, y in enumerate(all_years)}
    out: list[tuple[int, ...]] = []
    for r in range(0, len(years) + 1):
        for combo in itertools.combinations(years, r):
            ok = all(idx[b] - idx[a] >= lifetime
                     for a, b in zip(combo, combo[1:]))
            if ok:
                out.append(combo)
    return out


def enumerate_tiny(model: SystemModel,
                   options: Optional[SolverOptions] = None,
                   cap: int = 4096) -> SolveResult:
    """Best plan by trying every integral build schedule.

    Only usable when the integer decisions are the unit-commitment
    columns of binary candidates; everything else stays continuous.
    """
    prob = build_monolithic(model)
    binaries = [g for g in model.candidates() if model.is_binary(g)]
    per_unit: list[tuple[str, list[tuple[int, ...]]]] = []
    total = 1
    for g in binaries:
        scheds = _schedules(_decision_years(model, g), model.time.years,
                            g.lifetime_years or 1)
        per_unit.append((g.id, scheds))
        total *= len(scheds)
    if total > cap:
        raise ValueError(f"{total} schedules exceed the enumeration cap {cap}")

    d_cols = {(g.id, y): variable_key("decision", g.id, y)
              for g in binaries for y in model.time.years}
    saved = {col: prob.bounds(col) for col in
             (d_cols[(g.id, y)] for g in binaries for y in model.time.years)}

    best: Optional[SolveResult] = None
    for assignment in itertools.product(*(s for _, s in per_unit)) if per_unit else [()]:
        for (gid, _), chosen in zip(per_unit, assignment):
            for y in model.time.years:
                col = d_cols[(gid, y)]
                if y in chosen:
                    prob.set_bounds(col, 1.0, 1.0)
                else:
                    prob.set_bounds(col, 0.0, 0.0)
        res = solve_lp(prob, options)
        if res.status != OPTIMAL:
            continue
        if best is None or res.objective < best.objective - 1e-12:
            best = res
    for col, (lo, hi) in saved.items():
        prob.set_bounds(col, lo, hi)
    if best is None:
        return SolveResult(status="infeasible")
    return best
