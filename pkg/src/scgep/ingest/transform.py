"""Dataset transformations: counterfactual scenarios and supply scaling.

Scenario variants are data edits, not solver modes — the same model
builders and solvers run on a transformed ``SystemModel``:

* ``without-sc`` removes the supply chain from the economics: material
  budgets and land areas become effectively unlimited and build lead
  times collapse to zero;
* ``limited-sc`` multiplies every primary material supply by a factor.
"""

from __future__ import annotations

import dataclasses

from ..model import SystemModel

BASELINE = "baseline"
WITHOUT_SC = "without-sc"
LIMITED_SC = "limited-sc"
SCENARIOS = (BASELINE, WITHOUT_SC, LIMITED_SC)

_HUGE_SUPPLY_T = 1e9
_HUGE_AREA_KM2 = 1e6


def scale_material_supply(national: dict[str, dict[int, float]],
                          share: float,
                          sector_shares: dict[str, float]) -> dict[str, dict[int, float]]:
    """Regional material budgets from national series.

    Each material's national tonnage is multiplied by the regional share
    and by that material's sector share.
    """
    if not 0.0 <= share <= 1.0:
        raise ValueError(f"regional share {share} outside [0,1]")
    for m, s in sector_shares.items():
        if not 0.0 <= s <= 1.0:
            raise ValueError(f"sector share {s} for {m} outside [0,1]")
    out: dict[str, dict[int, float]] = {}
    for m, by_year in national.items():
        factor = share * sector_shares.get(m, 1.0)
        out[m] = {}
        for y, v in by_year.items():
            if v < 0:
                raise ValueError(f"national supply for {m}/{y} is negative")
            out[m][y] = v * factor
    return out


def apply_scenario(model: SystemModel, scenario: str,
                   supply_factor: float = 0.5) -> SystemModel:
    if scenario == BASELINE:
        return model
    if scenario == WITHOUT_SC:
        years = model.time.years
        areas: dict[str, dict[str, float]] = {}
        for pool, zone in model.field_pools():
            areas.setdefault(zone, {})[pool] = _HUGE_AREA_KM2
        supply = dataclasses.replace(
            model.supply_chain,
            primary_supply={m: {y: _HUGE_SUPPLY_T for y in years}
                            for m in model.catalog.materials},
            field_areas=areas,
        )
        assets = tuple(
            g if g.existing else dataclasses.replace(g, lead_time_years=0)
            for g in model.assets)
        return dataclasses.replace(model, supply_chain=supply, assets=assets,
                                   name=f"{model.name}@{WITHOUT_SC}")
    if scenario == LIMITED_SC:
        supply = dataclasses.replace(
            model.supply_chain,
            primary_supply={m: {y: v * supply_factor for y, v in by.items()}
                            for m, by in model.supply_chain.primary_supply.items()})
        return dataclasses.replace(model, supply_chain=supply,
                                   name=f"{model.name}@{LIMITED_SC}")
    raise ValueError(f"unknown scenario {scenario!r}; pick one of {SCENARIOS}")
