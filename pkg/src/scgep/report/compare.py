"""Deltas between two solved runs: capacity by technology and costs.

The comparison is directional — values are (B minus A) — so a positive
capacity delta means run B builds more of that technology that year.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .plan import PlanReport
from .tables import _num, text_table
from .writer import read_report


@dataclass
class RunComparison:
    name_a: str
    name_b: str
    years: tuple[int, ...]
    # technology -> year -> MW (B - A); technologies absent from one run
    # count as zero capacity there
    capacity_delta: dict[str, dict[int, float]]
    # year -> cost term -> $ (B - A)
    cost_delta: dict[int, dict[str, float]]
    objective_delta: float

    def max_abs_capacity_delta(self) -> float:
        return max((abs(v) for by in self.capacity_delta.values()
                    for v in by.values()), default=0.0)


def compare_runs(a: Union[str, Path, PlanReport],
                 b: Union[str, Path, PlanReport]) -> RunComparison:
    ra = a if isinstance(a, PlanReport) else read_report(a)
    rb = b if isinstance(b, PlanReport) else read_report(b)
    if ra.years != rb.years:
        raise ValueError(f"horizon mismatch: {ra.years} vs {rb.years}")

    techs = sorted(set(ra.capacity_by_technology) | set(rb.capacity_by_technology))
    capacity = {
        t: {y: (rb.capacity_by_technology.get(t, {}).get(y, 0.0)
                - ra.capacity_by_technology.get(t, {}).get(y, 0.0))
            for y in ra.years}
        for t in techs
    }
    cost = {
        y: {term: rb.costs[y][term] - ra.costs[y][term]
            for term in sorted(ra.costs[y])}
        for y in ra.years
    }
    return RunComparison(
        name_a=ra.name, name_b=rb.name, years=ra.years,
        capacity_delta=capacity, cost_delta=cost,
        objective_delta=(rb.objective or 0.0) - (ra.objective or 0.0))


def format_comparison(cmp: RunComparison) -> str:
    head = [f"comparison: {cmp.name_b} relative to {cmp.name_a}",
            f"objective delta: {_num(cmp.objective_delta)} $"]
    sections = ["\n".join(head)]

    techs = sorted(cmp.capacity_delta)
    if techs:
        rows = [[str(y)] + [_num(cmp.capacity_delta[t][y], 1) for t in techs]
                for y in cmp.years]
        sections.append("capacity delta (MW)\n"
                        + text_table(["year"] + techs, rows))

    if cmp.cost_delta:
        terms = sorted(next(iter(cmp.cost_delta.values())))
        rows = [[str(y)] + [_num(cmp.cost_delta[y][t]) for t in terms]
                for y in cmp.years]
        sections.append("cost delta ($)\n" + text_table(["year"] + terms, rows))

    return "\n\n".join(sections) + "\n"
