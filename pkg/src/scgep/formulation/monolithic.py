"""Whole-horizon problem: every year's columns chained by real references.

``build_monolithic`` also accepts a later ``start_year`` plus an explicit
incoming state, which yields the exact cost-to-go problem for the tail of
the horizon — the reference the decomposition's value functions are
tested against.
"""

from __future__ import annotations

from typing import Optional

from ..keys import variable_key
from ..milp import SparseProblem
from ..model import SystemModel
from .constraints import Term, YearContext, add_year_columns, emit_year
from .state import dlag_key, field_key, initial_state, max_lag, status_key, stock_key


class MonolithicContext(YearContext):
    def __init__(self, model: SystemModel, prob: SparseProblem, year: int,
                 start_year: int, incoming: dict[str, float]):
        super().__init__(model, prob, year)
        self.start_year = start_year
        self.incoming = incoming
        self._years = model.time.years

    def _is_first(self) -> bool:
        return self.year == self.start_year

    def _prev_year(self) -> int:
        return self._years[self._years.index(self.year) - 1]

    def prev_stock(self, material: str) -> Term:
        if self._is_first():
            return (None, self.incoming.get(stock_key(material), 0.0))
        return (variable_key("stock", material, self._prev_year()), 0.0)

    def prev_field(self, pool: str, zone: str) -> Term:
        if self._is_first():
            return (None, self.incoming.get(field_key(pool, zone), 0.0))
        return (variable_key("field", pool, zone, self._prev_year()), 0.0)

    def prev_status(self, unit_id: str) -> Term:
        if self._is_first():
            return (None, self.incoming.get(status_key(unit_id), 0.0))
        return (variable_key("status", unit_id, self._prev_year()), 0.0)

    def lagged_decision(self, unit_id: str, lag: int) -> Term:
        target = self._years.index(self.year) - lag
        start = self._years.index(self.start_year)
        if target >= start:
            return (variable_key("decision", unit_id, self._years[target]), 0.0)
        if target < 0:
            return (None, 0.0)
        # the decision predates this problem: read it from the incoming
        # state, whose lag is counted from the year before start
        j = start - target
        g = self.model.unit(unit_id)
        if j > max_lag(self.model, g):
            return (None, 0.0)
        return (None, self.incoming.get(dlag_key(unit_id, j), 0.0))


def build_monolithic(model: SystemModel, *, start_year: Optional[int] = None,
                     incoming_state: Optional[dict[str, float]] = None,
                     name: str = "horizon") -> SparseProblem:
    years = model.time.years
    start = start_year if start_year is not None else years[0]
    if start not in years:
        raise ValueError(f"start year {start} is not a planning year")
    incoming = incoming_state if incoming_state is not None else initial_state(model)
    prob = SparseProblem(name)
    for y in years:
        if y < start:
            continue
        ctx = MonolithicContext(model, prob, y, start, incoming)
        add_year_columns(ctx)
        emit_year(ctx)
    return prob
