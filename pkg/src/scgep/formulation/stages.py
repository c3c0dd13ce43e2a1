"""Single-year stage problems for the nested decomposition.

Each stage duplicates the incoming state as free ``z`` columns pinned by
equality rows (whose duals price the state), carries a nonnegative
cost-to-go column for the years after it, and exposes the mapping from
state-element keys to the columns whose solved values form the outgoing
state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..milp import SparseProblem
from ..model import SystemModel
from .constraints import Term, YearContext, add_year_columns, emit_year
from .state import (
    StateElement, dlag_key, field_key, max_lag, state_elements, status_key,
    stock_key,
)

NEG_INF = float("-inf")
POS_INF = float("inf")


def z_col(key: str) -> str:
    return f"z[{key}]"


def link_row(key: str) -> str:
    return f"link[{key}]"


@dataclass
class StageProblem:
    year: int
    prob: SparseProblem
    elements: list[StateElement]
    out_cols: dict[str, str] = field(default_factory=dict)
    alpha: Optional[str] = None

    def set_incoming(self, state: dict[str, float]) -> None:
        for e in self.elements:
            self.prob.set_rhs(link_row(e.key), state.get(e.key, 0.0))

    def outgoing(self, values: dict[str, float]) -> dict[str, float]:
        return {key: values.get(col, 0.0) for key, col in self.out_cols.items()}

    def own_cost(self, values: dict[str, float], objective: float) -> float:
        """Stage-incurred cost: the solve objective minus the cost-to-go part."""
        if self.alpha is None:
            return objective
        return objective - values.get(self.alpha, 0.0)


class StageContext(YearContext):
    def prev_stock(self, material: str) -> Term:
        return (z_col(stock_key(material)), 0.0)

    def prev_field(self, pool: str, zone: str) -> Term:
        return (z_col(field_key(pool, zone)), 0.0)

    def prev_status(self, unit_id: str) -> Term:
        return (z_col(status_key(unit_id)), 0.0)

    def lagged_decision(self, unit_id: str, lag: int) -> Term:
        g = self.model.unit(unit_id)
        if lag > max_lag(self.model, g):
            return (None, 0.0)
        return (z_col(dlag_key(unit_id, lag)), 0.0)


def build_stage(model: SystemModel, year: int) -> StageProblem:
    years = model.time.years
    if year not in years:
        raise ValueError(f"{year} is not a planning year")
    prob = SparseProblem(f"stage-{year}")
    elements = state_elements(model)
    for e in elements:
        prob.add_col(z_col(e.key), NEG_INF, POS_INF)
    ctx = StageContext(model, prob, year)
    add_year_columns(ctx)
    emit_year(ctx)
    for e in elements:
        prob.add_row(link_row(e.key), [(z_col(e.key), 1.0)], "==", 0.0)

    out_cols: dict[str, str] = {}
    for e in elements:
        if e.kind == "stock":
            out_cols[e.key] = ctx.col("stock", e.material)
        elif e.kind == "field":
            out_cols[e.key] = ctx.col("field", e.pool, e.zone)
        elif e.kind == "status":
            out_cols[e.key] = ctx.col("status", e.unit)
        elif e.kind == "dlag":
            if e.lag == 1:
                out_cols[e.key] = ctx.col("decision", e.unit)
            else:
                # older decisions just shift one slot deeper
                out_cols[e.key] = z_col(dlag_key(e.unit, e.lag - 1))

    alpha = None
    if year != years[-1]:
        alpha = f"alpha[{year}]"
        prob.add_col(alpha, 0.0, POS_INF, obj=1.0)
    return StageProblem(year=year, prob=prob, elements=elements,
                        out_cols=out_cols, alpha=alpha)


def build_all_stages(model: SystemModel) -> list[StageProblem]:
    return [build_stage(model, y) for y in model.time.years]
