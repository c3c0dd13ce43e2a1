"""Conservation checks applied to a solved plan.

These re-derive every coupling identity of the formulation directly from
a solution dictionary — deliberately sharing no code with the row
emitters — so a builder bug and its mirror image in the checker cannot
cancel out.  Every solved plan in the test suite and every report pass
through here.
"""

from __future__ import annotations

from ..keys import variable_key as vk
from ..model import STORAGE, SystemModel


def _bad(msgs: list[str], label: str, got: float, want: float, tol: float) -> None:
    if abs(got - want) > tol:
        msgs.append(f"{label}: got {got!r}, expected {want!r}")


def verify_plan_invariants(model: SystemModel, values: dict[str, float],
                           tol: float = 1e-6) -> list[str]:
    """Return a list of violated identities; empty means the plan is sound."""
    msgs: list[str] = []
    time = model.time
    years = time.years
    scd = model.supply_chain

    def val(*key) -> float:
        return values.get(vk(*key), 0.0)

    def d_at(g, year: int) -> float:
        return val("decision", g.id, year) if year in years else 0.0

    # material stock: per-year recursion and whole-horizon telescoping
    for m in model.catalog.materials:
        running = scd.initial_stock.get(m, 0.0)
        for y in years:
            recovered = sum(scd.recovery(g.id, m) * g.capacity_mw
                            * val("retire", g.id, y) for g in model.assets)
            running += scd.supply(m, y) - val("material-use", m, y) + recovered
            _bad(msgs, f"stock recursion {m}/{y}", val("stock", m, y),
                 running, tol)

    # field areas: monotone ledger driven by completions
    for pool, zone in model.field_pools():
        running = scd.area(zone, pool)
        for y in years:
            for g in model.assets:
                tech = model.tech_of(g)
                if g.zone == zone and tech.uses_land and tech.field_pool == pool:
                    running -= (g.capacity_mw / tech.capacity_density_mw_km2
                                * val("build", g.id, y))
            _bad(msgs, f"field ledger {pool}/{zone}/{y}",
                 val("field", pool, zone, y), running, tol)
            if val("field", pool, zone, y) < -tol:
                msgs.append(f"field ledger {pool}/{zone}/{y}: negative area")

    # completions and retirements are lagged copies of the decision
    for g in model.candidates():
        lead = g.lead_time_years or 0
        lifetime = g.lifetime_years or 1
        for k, y in enumerate(years):
            _bad(msgs, f"lead shift {g.id}/{y}", val("build", g.id, y),
                 d_at(g, years[k - lead]) if k - lead >= 0 else 0.0, tol)
            k_r = k - lead - lifetime
            _bad(msgs, f"lifetime retirement {g.id}/{y}", val("retire", g.id, y),
                 d_at(g, years[k_r]) if k_r >= 0 else 0.0, tol)

    # operating status accumulates builds and retirements
    for g in model.assets:
        prev = 1.0 if g.existing else 0.0
        for y in years:
            want = prev + val("build", g.id, y) - val("retire", g.id, y)
            got = val("status", g.id, y)
            _bad(msgs, f"status algebra {g.id}/{y}", got, want, tol)
            if got < -tol or got > 1.0 + tol:
                msgs.append(f"status range {g.id}/{y}: {got!r} outside [0,1]")
            prev = got

    # storage: day-boundary anchors and hourly energy accounting
    for g in model.assets:
        if model.tech_of(g).type != STORAGE:
            continue
        half = 0.5 * g.energy_capacity_mwh
        for y in years:
            anchor = half * val("status", g.id, y)
            for t in time.days:
                _bad(msgs, f"soc opening {g.id}/{t}/{y}",
                     val("soc", g.id, t, 0, y), anchor, tol)
                _bad(msgs, f"soc closing {g.id}/{t}/{y}",
                     val("soc", g.id, t, time.hours, y), anchor, tol)
                for h in time.hour_labels():
                    want = (val("soc", g.id, t, h - 1, y)
                            + g.charge_efficiency * val("charge", g.id, t, h, y)
                            - val("discharge", g.id, t, h, y) / g.discharge_efficiency)
                    _bad(msgs, f"soc dynamics {g.id}/{t}/{h}/{y}",
                         val("soc", g.id, t, h, y), want, tol)

    # nodal balance including corridor flows and exogenous imports
    sc = model.scenario
    for zone in model.topology.zones:
        units = model.units_in_zone(zone)
        inflows = model.topology.corridors_to(zone)
        outflows = model.topology.corridors_from(zone)
        for y in years:
            for t in time.days:
                loads = sc.load_at(zone, t, y)
                imports = sc.imports_at(zone, t, y)
                for h in time.hour_labels():
                    supplied = 0.0
                    for g in units:
                        if model.tech_of(g).type == STORAGE:
                            supplied += (val("discharge", g.id, t, h, y)
                                         - val("charge", g.id, t, h, y))
                        else:
                            supplied += val("gen-output", g.id, t, h, y)
                    supplied += sum(val("flow", c.id, t, h, y) for c in inflows)
                    supplied -= sum(val("flow", c.id, t, h, y) for c in outflows)
                    supplied += val("load-shed", zone, t, h, y)
                    supplied += imports[h - 1] if imports else 0.0
                    _bad(msgs, f"balance {zone}/{t}/{h}/{y}", supplied,
                         loads[h - 1], tol)

    return msgs
