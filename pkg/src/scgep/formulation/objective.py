"""Objective pieces: investment annuities, operating costs, penalties.

Investment cost of a decision is prorated by the share of the unit's
lifetime that fits inside the horizon (operation starts after the lead
time) and discounted to the first year.  Operating costs and penalties
are charged in year-of-occurrence terms without discounting.
"""

from __future__ import annotations

from ..model import GeneratorAsset, SystemModel


def adjusted_investment_cost(model: SystemModel, g: GeneratorAsset,
                             year: int) -> float:
    """$/MW charged when unit ``g`` is committed in ``year``."""
    years = model.time.years
    k = years.index(year)
    lead = g.lead_time_years or 0
    lifetime = g.lifetime_years or 1
    remaining = len(years) - (k + lead)
    if remaining <= 0:
        return 0.0
    fraction = min(lifetime, remaining) / lifetime
    discount = (1.0 + model.time.discount_rate) ** (-k)
    return g.invest_cost_for(year) * fraction * discount


def can_operate_in_horizon(model: SystemModel, g: GeneratorAsset,
                           year: int) -> bool:
    """False when a decision this year could never reach operation."""
    k = model.time.years.index(year)
    lead = g.lead_time_years or 0
    return k + lead <= len(model.time.years) - 1


_COST_TERMS = ("investment", "fixed_om", "variable", "load_shedding_penalty",
               "reserve_margin_penalty", "rps_penalty")


def cost_breakdown_by_year(model: SystemModel,
                           values: dict[str, float]) -> dict[int, dict[str, float]]:
    """Re-derive every objective term, year by year, from a solution.

    Must stay in exact agreement with the coefficients placed on columns
    by the builders; reports and solver cross-checks both rely on it.
    """
    from ..keys import variable_key as vk

    time = model.time
    pen = model.penalties
    out: dict[int, dict[str, float]] = {}
    for y in time.years:
        inv = fom = var = shed = reserve = rps = 0.0
        for g in model.assets:
            if not g.existing:
                d = values.get(vk("decision", g.id, y), 0.0)
                inv += adjusted_investment_cost(model, g, y) * g.capacity_mw * d
            o = values.get(vk("status", g.id, y), 0.0)
            fom += g.fixed_om_for(y) * g.capacity_mw * o
        for t in time.days:
            n = time.weight(t, y)
            for h in time.hour_labels():
                for g in model.assets:
                    tech = model.tech_of(g)
                    if tech.type == "storage":
                        var += n * g.variable_cost * (
                            values.get(vk("charge", g.id, t, h, y), 0.0)
                            + values.get(vk("discharge", g.id, t, h, y), 0.0))
                    else:
                        var += n * g.variable_cost * values.get(
                            vk("gen-output", g.id, t, h, y), 0.0)
                for zone in model.topology.zones:
                    shed += n * pen.voll_per_mwh * values.get(
                        vk("load-shed", zone, t, h, y), 0.0)
        reserve += pen.reserve_margin_per_mw_year * values.get(
            vk("reserve-shortfall", y), 0.0)
        for tech_id in sorted(model.scenario.rps):
            rps += pen.rps_per_mwh * values.get(
                vk("rps-shortfall", tech_id, y), 0.0)
        out[y] = {
            "investment": inv,
            "fixed_om": fom,
            "variable": var,
            "load_shedding_penalty": shed,
            "reserve_margin_penalty": reserve,
            "rps_penalty": rps,
            "total": inv + fom + var + shed + reserve + rps,
        }
    return out


def cost_breakdown(model: SystemModel, values: dict[str, float]) -> dict[str, float]:
    """Horizon totals of :func:`cost_breakdown_by_year`."""
    by_year = cost_breakdown_by_year(model, values)
    out = {term: sum(b[term] for b in by_year.values()) for term in _COST_TERMS}
    out["total"] = sum(out.values())
    return out
