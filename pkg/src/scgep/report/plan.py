"""Solved-plan summaries: one schema-versioned structure per run.

A ``PlanReport`` is everything a downstream consumer needs — build and
retirement schedules, per-technology capacity, material and land ledgers,
reliability outcomes and the cost breakdown — derived once from a solution
dictionary and then serialized verbatim.  Nothing time- or host-dependent
goes in, so identical solves produce identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ..formulation import cost_breakdown_by_year
from ..keys import variable_key as vk
from ..model import SystemModel, model_digest

SCHEMA_VERSION = 1

_ITERATION_FIELDS = ("iteration", "lower_bound", "upper_bound", "gap",
                     "cuts_added")


@dataclass
class PlanReport:
    name: str
    mode: str                 # "monolithic" or "nbd"
    status: str
    objective: float
    years: tuple[int, ...]
    # unit -> static facts plus per-year decided/built/retired/status
    units: dict[str, dict]
    # technology -> year -> operating MW
    capacity_by_technology: dict[str, dict[int, float]]
    # technology -> year -> annualized energy (MWh); storage adds charge
    dispatch: dict[str, dict[int, dict[str, float]]]
    # material -> year -> used/supply/remaining/stock (tonnes)
    materials: dict[str, dict[int, dict[str, float]]]
    # "pool/zone" -> year -> remaining area (km2)
    fields: dict[str, dict[int, float]]
    # year -> peak, shed, reserve shortfall, rps shortfall by technology
    reliability: dict[int, dict]
    # year -> cost terms ($), each with a per-year total
    costs: dict[int, dict[str, float]]
    cost_totals: dict[str, float]
    lower_bound: Optional[float] = None
    gap: Optional[float] = None
    iterations: list[dict] = field(default_factory=list)
    model_digest: str = ""
    schema_version: int = SCHEMA_VERSION

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "name": self.name,
            "mode": self.mode,
            "status": self.status,
            "objective": _finite_or_none(self.objective),
            "lower_bound": _finite_or_none(self.lower_bound),
            "gap": _finite_or_none(self.gap),
            "model_digest": self.model_digest,
            "years": list(self.years),
            "units": self.units,
            "capacity_by_technology": _years_to_str(self.capacity_by_technology),
            "dispatch": _years_to_str(self.dispatch),
            "materials": _years_to_str(self.materials),
            "fields": _years_to_str(self.fields),
            "reliability": {str(y): v for y, v in self.reliability.items()},
            "costs": {str(y): v for y, v in self.costs.items()},
            "cost_totals": self.cost_totals,
            "iterations": self.iterations,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "PlanReport":
        version = int(doc.get("schema_version", -1))
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported plan schema version {version}; "
                             f"this build reads version {SCHEMA_VERSION}")
        units = {
            u: {**info, "years": {int(y): v
                                  for y, v in info.get("years", {}).items()}}
            for u, info in doc["units"].items()
        }
        return cls(
            name=doc["name"], mode=doc["mode"], status=doc["status"],
            objective=doc["objective"], years=tuple(doc["years"]),
            units=units,
            capacity_by_technology=_years_to_int(doc["capacity_by_technology"]),
            dispatch=_years_to_int(doc["dispatch"]),
            materials=_years_to_int(doc["materials"]),
            fields=_years_to_int(doc["fields"]),
            reliability={int(y): v for y, v in doc["reliability"].items()},
            costs={int(y): v for y, v in doc["costs"].items()},
            cost_totals=doc["cost_totals"],
            lower_bound=doc.get("lower_bound"),
            gap=doc.get("gap"),
            iterations=list(doc.get("iterations", [])),
            model_digest=doc.get("model_digest", ""),
            schema_version=version,
        )


def _finite_or_none(v: Optional[float]) -> Optional[float]:
    return v if v is not None and math.isfinite(v) else None


def _years_to_str(d: dict) -> dict:
    return {outer: {str(y): v for y, v in inner.items()}
            for outer, inner in d.items()}


def _years_to_int(d: dict) -> dict:
    return {outer: {int(y): v for y, v in inner.items()}
            for outer, inner in d.items()}


# ---------------------------------------------------------------------------
# building a report from a solution dictionary

def build_plan(model: SystemModel, values: dict[str, float], *,
               mode: str, status: str, objective: float,
               lower_bound: Optional[float] = None,
               gap: Optional[float] = None,
               iterations: tuple[dict, ...] = ()) -> PlanReport:
    time = model.time
    years = time.years

    units: dict[str, dict] = {}
    for g in sorted(model.assets, key=lambda a: a.id):
        per_year = {}
        for y in years:
            o = values.get(vk("status", g.id, y), 0.0)
            per_year[y] = {
                "decided": values.get(vk("decision", g.id, y), 0.0),
                "built": values.get(vk("build", g.id, y), 0.0),
                "retired": values.get(vk("retire", g.id, y), 0.0),
                "status": o,
                "operational_mw": g.capacity_mw * o,
            }
        units[g.id] = {
            "technology": g.technology,
            "zone": g.zone,
            "existing": g.existing,
            "capacity_mw": g.capacity_mw,
            "years": per_year,
        }

    capacity: dict[str, dict[int, float]] = {}
    dispatch: dict[str, dict[int, dict[str, float]]] = {}
    for tech in sorted(t.id for t in model.catalog.technologies):
        members = model.units_of_tech(tech)
        if not members:
            continue
        is_storage = model.catalog.tech(tech).type == "storage"
        capacity[tech] = {}
        dispatch[tech] = {}
        for y in years:
            capacity[tech][y] = sum(
                g.capacity_mw * values.get(vk("status", g.id, y), 0.0)
                for g in members)
            gen = charge = 0.0
            for t in time.days:
                n = time.weight(t, y)
                for h in time.hour_labels():
                    for g in members:
                        if is_storage:
                            gen += n * values.get(vk("discharge", g.id, t, h, y), 0.0)
                            charge += n * values.get(vk("charge", g.id, t, h, y), 0.0)
                        else:
                            gen += n * values.get(vk("gen-output", g.id, t, h, y), 0.0)
            dispatch[tech][y] = {"generation_mwh": gen}
            if is_storage:
                dispatch[tech][y]["charge_mwh"] = charge

    materials: dict[str, dict[int, dict[str, float]]] = {}
    for m in sorted(model.catalog.materials):
        materials[m] = {}
        for y in years:
            used = values.get(vk("material-use", m, y), 0.0)
            supply = model.supply_chain.supply(m, y)
            materials[m][y] = {
                "used_t": used,
                "supply_t": supply,
                "remaining_supply_t": supply - used,
                "stock_t": values.get(vk("stock", m, y), 0.0),
            }

    fields: dict[str, dict[int, float]] = {}
    for pool, zone in sorted(model.field_pools()):
        fields[f"{pool}/{zone}"] = {
            y: values.get(vk("field", pool, zone, y), 0.0) for y in years}

    reliability: dict[int, dict] = {}
    for y in years:
        shed = 0.0
        for t in time.days:
            n = time.weight(t, y)
            for h in time.hour_labels():
                for zone in model.topology.zones:
                    shed += n * values.get(vk("load-shed", zone, t, h, y), 0.0)
        reliability[y] = {
            "peak_mw": model.scenario.peak_load.get(y, 0.0),
            "shed_mwh": shed,
            "reserve_shortfall_mw": values.get(vk("reserve-shortfall", y), 0.0),
            "rps_shortfall_mwh": {
                tech: values.get(vk("rps-shortfall", tech, y), 0.0)
                for tech in sorted(model.scenario.rps)},
        }

    costs = cost_breakdown_by_year(model, values)
    totals: dict[str, float] = {}
    for per_year in costs.values():
        for term, v in per_year.items():
            totals[term] = totals.get(term, 0.0) + v

    return PlanReport(
        name=model.name, mode=mode, status=status, objective=objective,
        years=years, units=units, capacity_by_technology=capacity,
        dispatch=dispatch, materials=materials, fields=fields,
        reliability=reliability, costs=costs, cost_totals=totals,
        lower_bound=lower_bound, gap=gap, iterations=list(iterations),
        model_digest=model_digest(model))


def plan_from_monolithic(model: SystemModel, result) -> PlanReport:
    """Report for a single horizon-wide solve (``SolveResult``)."""
    return build_plan(model, result.values, mode="monolithic",
                      status=result.status,
                      objective=(result.objective
                                 if result.objective is not None else float("nan")),
                      lower_bound=result.best_bound)


def plan_from_nbd(model: SystemModel, result) -> PlanReport:
    """Report for a decomposition run (``NBDResult``).

    Iteration records are embedded without their wall-clock field so the
    report stays byte-identical across reruns.
    """
    iterations = tuple(
        {k: (_finite_or_none(v) if isinstance(v, float) else v)
         for k, v in rec.to_dict().items() if k in _ITERATION_FIELDS}
        for rec in result.iterations)
    return build_plan(model, result.values, mode="nbd", status=result.status,
                      objective=result.objective,
                      lower_bound=result.lower_bound, gap=result.gap,
                      iterations=iterations)
