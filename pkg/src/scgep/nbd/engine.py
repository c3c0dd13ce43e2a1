"""Year-by-year decomposition with value-function cuts.

Each iteration walks the years forward, solving every stage to integer
optimality from the state its predecessor produced; the accumulated
stage costs of that feasible trajectory give an upper bound, and the
first stage's objective (which sees all cuts collected so far) gives a
lower bound.  The backward sweep then re-solves each stage's LP
relaxation at the trial states, turning link-row duals into new cuts for
the preceding year.  Penalty slacks plus the build-window guard rows
make every reachable state feasible, so no feasibility cuts are needed.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from ..formulation import build_all_stages, initial_state
from ..formulation.stages import StageProblem, link_row
from ..milp import OPTIMAL, SolverOptions, solve_lp, solve_milp
from ..model import SystemModel
from .cuts import BendersCut, CutPool

INF = float("inf")

CONVERGED = "converged"
ITERATION_LIMIT = "iteration-limit"
STAGE_FAILURE = "stage-failure"


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    lower_bound: float
    upper_bound: float      # best so far
    gap: float              # relative to the upper bound
    cuts_added: int
    seconds: float

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "gap": self.gap,
            "cuts_added": self.cuts_added,
            "seconds": round(self.seconds, 6),
        }


@dataclass
class NBDResult:
    status: str
    objective: float = INF            # best upper bound
    lower_bound: float = -INF
    gap: float = INF
    iterations: list[IterationRecord] = field(default_factory=list)
    values: dict[str, float] = field(default_factory=dict)
    state_trajectory: list[dict[str, float]] = field(default_factory=list)
    total_cuts: int = 0
    detail: str = ""

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED

    @property
    def n_iterations(self) -> int:
        return len(self.iterations)


def _relative_gap(upper: float, lower: float) -> float:
    if upper >= INF or lower <= -INF:
        return INF
    return (upper - lower) / max(1.0, abs(upper))


def _strip_internal(values: dict[str, float]) -> dict[str, float]:
    return {k: v for k, v in values.items()
            if not k.startswith("z[") and not k.startswith("alpha[")}


class NestedBenders:
    """Decomposition driver over the per-year stage problems."""

    def __init__(self, model: SystemModel, *,
                 epsilon: float = 1e-6,
                 max_iterations: int = 50,
                 options: Optional[SolverOptions] = None,
                 log_path: Optional[str] = None):
        self.model = model
        self.epsilon = epsilon
        self.max_iterations = max_iterations
        # stage problems are small; solve their MILPs essentially exactly
        # so the first-stage bound stays monotone
        self.options = options or SolverOptions(mip_rel_gap=1e-9,
                                                mip_abs_gap=1e-9)
        self.log_path = log_path
        self.stages: list[StageProblem] = build_all_stages(model)
        self.pools: dict[int, CutPool] = {s.year: CutPool() for s in self.stages}

    # -- cut plumbing ------------------------------------------------------
    def _install_cut(self, stage: StageProblem, cut: BendersCut) -> bool:
        pool = self.pools[stage.year]
        if not pool.add(cut):
            return False
        name = f"cut[{stage.year},{len(pool)}]"
        coefs = [(stage.alpha, 1.0)]
        for key, mu in sorted(cut.slopes.items()):
            if mu != 0.0:
                coefs.append((stage.out_cols[key], -mu))
        stage.prob.add_row(name, coefs, ">=", cut.intercept)
        return True

    # -- passes ------------------------------------------------------------
    def _forward(self):
        """Solve every stage along one trajectory; returns (records, lb)."""
        state = initial_state(self.model)
        trajectory = [dict(state)]
        merged: dict[str, float] = {}
        own_total = 0.0
        first_bound = None
        for stage in self.stages:
            stage.set_incoming(state)
            res = solve_milp(stage.prob, self.options)
            if res.status != OPTIMAL:
                return None, None, None, (stage.year, res.status)
            if first_bound is None:
                first_bound = (res.objective if res.best_bound is None
                               else min(res.best_bound, res.objective))
            own_total += stage.own_cost(res.values, res.objective)
            merged.update(_strip_internal(res.values))
            state = stage.outgoing(res.values)
            trajectory.append(dict(state))
        return trajectory, merged, (first_bound, own_total), None

    def _backward(self, trajectory) -> int:
        added = 0
        for k in range(len(self.stages) - 1, 0, -1):
            stage = self.stages[k]
            stage.set_incoming(trajectory[k])
            res = solve_lp(stage.prob, self.options)
            if res.status != OPTIMAL:
                continue
            slopes = {e.key: res.duals.get(link_row(e.key), 0.0)
                      for e in stage.elements}
            intercept = res.objective - sum(
                mu * trajectory[k].get(key, 0.0) for key, mu in slopes.items())
            if self._install_cut(self.stages[k - 1],
                                 BendersCut(intercept, slopes)):
                added += 1
        return added

    # -- driver ------------------------------------------------------------
    def solve(self) -> NBDResult:
        result = NBDResult(status=ITERATION_LIMIT)
        best_ub = INF
        log = open(self.log_path, "w") if self.log_path else None
        try:
            for it in range(1, self.max_iterations + 1):
                t0 = time.perf_counter()
                trajectory, merged, bounds, failure = self._forward()
                if failure is not None:
                    year, status = failure
                    result.status = STAGE_FAILURE
                    result.detail = f"stage {year} came back {status}"
                    break
                lb, ub_candidate = bounds
                if ub_candidate < best_ub:
                    best_ub = ub_candidate
                    result.values = merged
                    result.state_trajectory = trajectory
                result.lower_bound = max(result.lower_bound, lb)
                result.objective = best_ub
                result.gap = _relative_gap(best_ub, result.lower_bound)

                converged = result.gap <= self.epsilon
                cuts_added = 0 if converged else self._backward(trajectory)
                rec = IterationRecord(
                    iteration=it, lower_bound=result.lower_bound,
                    upper_bound=best_ub, gap=result.gap,
                    cuts_added=cuts_added,
                    seconds=time.perf_counter() - t0)
                result.iterations.append(rec)
                if log:
                    log.write(json.dumps(rec.to_dict()) + "\n")
                if converged:
                    result.status = CONVERGED
                    break
                if cuts_added == 0:
                    # no new information anywhere: the bounds cannot move
                    result.status = (CONVERGED if result.gap <= self.epsilon
                                     else ITERATION_LIMIT)
                    result.detail = "cut pool saturated"
                    break
        finally:
            if log:
                log.close()
        result.total_cuts = sum(len(p) for p in self.pools.values())
        return result


def solve_nested_benders(model: SystemModel, **kwargs) -> NBDResult:
    return NestedBenders(model, **kwargs).solve()
