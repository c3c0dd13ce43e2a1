"""Serialization of plan reports: one JSON document plus CSV projections.

Output is byte-stable: identical reports serialize to identical bytes
(sorted keys, shortest round-trip float formatting, LF newlines), which
is what makes repeat-run digests comparable.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .plan import PlanReport

CSV_FILES = ("capacity.csv", "materials.csv", "fields.csv",
             "reliability.csv", "costs.csv")

_COST_COLUMNS = ("investment", "fixed_om", "variable", "load_shedding_penalty",
                 "reserve_margin_penalty", "rps_penalty", "total")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_plan_json(report: PlanReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def render_capacity_csv(report: PlanReport) -> str:
    rows = []
    for y in report.years:
        for unit in sorted(report.units):
            info = report.units[unit]
            yr = info["years"][y]
            rows.append([y, info["technology"], unit, info["zone"],
                         yr["decided"], yr["built"], yr["retired"],
                         yr["status"], yr["operational_mw"]])
    return _csv(["year", "technology", "unit", "zone", "decided", "built",
                 "retired", "status", "operational_mw"], rows)


def render_materials_csv(report: PlanReport) -> str:
    rows = []
    for y in report.years:
        for m in sorted(report.materials):
            led = report.materials[m][y]
            rows.append([y, m, led["used_t"], led["supply_t"],
                         led["remaining_supply_t"], led["stock_t"]])
    return _csv(["year", "material", "used_t", "supply_t",
                 "remaining_supply_t", "stock_t"], rows)


def render_fields_csv(report: PlanReport) -> str:
    rows = []
    for y in report.years:
        for key in sorted(report.fields):
            pool, zone = key.split("/", 1)
            rows.append([y, pool, zone, report.fields[key][y]])
    return _csv(["year", "pool", "zone", "remaining_km2"], rows)


def render_reliability_csv(report: PlanReport) -> str:
    rows = []
    for y in report.years:
        rel = report.reliability[y]
        rows.append([y, rel["peak_mw"], rel["shed_mwh"],
                     rel["reserve_shortfall_mw"],
                     sum(rel["rps_shortfall_mwh"].values())])
    return _csv(["year", "peak_mw", "shed_mwh", "reserve_shortfall_mw",
                 "rps_shortfall_mwh"], rows)


def render_costs_csv(report: PlanReport) -> str:
    rows = []
    for y in report.years:
        per = report.costs[y]
        rows.append([y] + [per[c] for c in _COST_COLUMNS])
    if report.years:
        rows.append(["all"] + [report.cost_totals.get(c, 0.0)
                               for c in _COST_COLUMNS])
    return _csv(["year"] + list(_COST_COLUMNS), rows)


_RENDERERS = {
    "plan.json": render_plan_json,
    "capacity.csv": render_capacity_csv,
    "materials.csv": render_materials_csv,
    "fields.csv": render_fields_csv,
    "reliability.csv": render_reliability_csv,
    "costs.csv": render_costs_csv,
}


def write_report(report: PlanReport, out_dir: Union[str, Path]) -> list[Path]:
    """Write plan.json and the CSV projections; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, render in _RENDERERS.items():
        path = out / name
        path.write_text(render(report), encoding="utf-8", newline="\n")
        written.append(path)
    return written


def read_report(source: Union[str, Path]) -> PlanReport:
    """Load a report back from plan.json (or a directory containing one)."""
    path = Path(source)
    if path.is_dir():
        path = path / "plan.json"
    with open(path, encoding="utf-8") as fh:
        return PlanReport.from_dict(json.load(fh))
