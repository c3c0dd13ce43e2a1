"""Domain types for the planning dataset and their validation.

Everything the builders consume lives here: network topology, the
technology/material catalog, generator and storage assets, the
representative-day time structure, demand/availability scenarios, supply
chain parameters and penalty prices.  A ``SystemModel`` is treated as
immutable once it has passed ``validate``.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field, asdict
from typing import Optional

THERMAL = "thermal"
RENEWABLE = "renewable"
STORAGE = "storage"
TECH_TYPES = (THERMAL, RENEWABLE, STORAGE)

# ids become substrings of bracketed variable keys and colon-separated
# state keys, so those separator characters are banned to keep key
# construction injective
_ID_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


@dataclass(frozen=True)
class Corridor:
    id: str
    from_zone: str
    to_zone: str
    capacity_mw: float


@dataclass(frozen=True)
class Topology:
    zones: tuple[str, ...]
    corridors: tuple[Corridor, ...] = ()

    def corridors_from(self, zone: str) -> list[Corridor]:
        return [l for l in self.corridors if l.from_zone == zone]

    def corridors_to(self, zone: str) -> list[Corridor]:
        return [l for l in self.corridors if l.to_zone == zone]


@dataclass(frozen=True)
class Technology:
    id: str
    type: str                               # thermal | renewable | storage
    capacity_density_mw_km2: Optional[float] = None   # None: no land use
    elcc: dict[int, float] = field(default_factory=dict)  # year -> factor, default 1.0
    # land pool drawn from; default own id (attribute shadows dataclasses.field,
    # so it must stay last in the class body)
    field: Optional[str] = None

    @property
    def field_pool(self) -> str:
        return self.field if self.field is not None else self.id

    def elcc_for(self, year: int) -> float:
        return self.elcc.get(year, 1.0)

    @property
    def uses_land(self) -> bool:
        return self.capacity_density_mw_km2 is not None


@dataclass(frozen=True)
class Component:
    id: str
    materials: dict[str, float]             # material -> tonnes per unit


@dataclass(frozen=True)
class Product:
    id: str
    technology: str
    components: dict[str, float]            # component -> units per MW


@dataclass(frozen=True)
class TechnologyCatalog:
    technologies: tuple[Technology, ...]
    materials: tuple[str, ...] = ()
    components: tuple[Component, ...] = ()
    products: tuple[Product, ...] = ()

    def tech(self, tech_id: str) -> Technology:
        for t in self.technologies:
            if t.id == tech_id:
                return t
        raise KeyError(tech_id)

    def products_of(self, tech_id: str) -> list[Product]:
        return [p for p in self.products if p.technology == tech_id]

    def component(self, comp_id: str) -> Component:
        for c in self.components:
            if c.id == comp_id:
                return c
        raise KeyError(comp_id)

    def tech_consumes_materials(self, tech_id: str) -> bool:
        """True when some product of the technology reaches a declared material."""
        for p in self.products_of(tech_id):
            for comp_id in p.components:
                comp = next((c for c in self.components if c.id == comp_id), None)
                if comp is not None and any(m in self.materials for m in comp.materials):
                    return True
        return False


@dataclass(frozen=True)
class GeneratorAsset:
    id: str
    zone: str
    technology: str
    capacity_mw: float
    existing: bool
    # candidates
    product: Optional[str] = None
    lead_time_years: Optional[int] = None
    lifetime_years: Optional[int] = None
    binary: Optional[bool] = None           # default: binary iff thermal
    invest_cost: dict[int, float] = field(default_factory=dict)   # $/MW by year
    # existing
    retirement_year: Optional[int] = None
    # storage only
    energy_capacity_mwh: Optional[float] = None
    charge_efficiency: Optional[float] = None
    discharge_efficiency: Optional[float] = None
    # costs
    fixed_om: dict[int, float] = field(default_factory=dict)      # $/MW-year by year
    variable_cost: float = 0.0                                    # $/MWh

    def fixed_om_for(self, year: int) -> float:
        return self.fixed_om.get(year, 0.0)

    def invest_cost_for(self, year: int) -> float:
        return self.invest_cost.get(year, 0.0)


@dataclass(frozen=True)
class TimeStructure:
    years: tuple[int, ...]
    days: tuple[str, ...]
    hours: int
    weights: dict[str, dict[int, float]]    # day -> year -> occurrences
    discount_rate: float = 0.0

    def weight(self, day: str, year: int) -> float:
        return self.weights[day][year]

    def year_index(self, year: int) -> int:
        return self.years.index(year)

    def hour_labels(self) -> range:
        return range(1, self.hours + 1)


@dataclass(frozen=True)
class ScenarioData:
    # zone -> day -> year -> list of hourly MW
    load: dict[str, dict[str, dict[int, tuple[float, ...]]]]
    peak_load: dict[int, float]
    # "zone/tech" -> day -> year -> hourly availability in [0,1]
    availability: dict[str, dict[str, dict[int, tuple[float, ...]]]] = field(default_factory=dict)
    reserve_margin: dict[int, float] = field(default_factory=dict)
    rps: dict[str, dict[int, float]] = field(default_factory=dict)  # tech -> year -> share
    # zone -> day -> year -> hourly signed injection MW (imports positive)
    imports: dict[str, dict[str, dict[int, tuple[float, ...]]]] = field(default_factory=dict)

    def load_at(self, zone: str, day: str, year: int) -> tuple[float, ...]:
        return self.load[zone][day][year]

    def availability_at(self, zone: str, tech: str, day: str, year: int):
        key = f"{zone}/{tech}"
        series = self.availability.get(key)
        if series is None:
            return None
        return series.get(day, {}).get(year)

    def imports_at(self, zone: str, day: str, year: int):
        series = self.imports.get(zone)
        if series is None:
            return None
        return series.get(day, {}).get(year)


@dataclass(frozen=True)
class SupplyChainData:
    primary_supply: dict[str, dict[int, float]] = field(default_factory=dict)  # material -> year -> t
    recovery_rates: dict[str, dict[str, float]] = field(default_factory=dict)  # unit -> material -> t/MW
    initial_stock: dict[str, float] = field(default_factory=dict)              # material -> t
    field_areas: dict[str, dict[str, float]] = field(default_factory=dict)     # zone -> pool -> km^2

    def supply(self, material: str, year: int) -> float:
        return self.primary_supply.get(material, {}).get(year, 0.0)

    def recovery(self, unit: str, material: str) -> float:
        return self.recovery_rates.get(unit, {}).get(material, 0.0)

    def area(self, zone: str, pool: str) -> float:
        return self.field_areas.get(zone, {}).get(pool, 0.0)


@dataclass(frozen=True)
class PenaltyPrices:
    voll_per_mwh: float
    reserve_margin_per_mw_year: float
    rps_per_mwh: float


@dataclass(frozen=True)
class SystemModel:
    topology: Topology
    catalog: TechnologyCatalog
    assets: tuple[GeneratorAsset, ...]
    time: TimeStructure
    scenario: ScenarioData
    supply_chain: SupplyChainData
    penalties: PenaltyPrices
    name: str = "system"

    def unit(self, unit_id: str) -> GeneratorAsset:
        for g in self.assets:
            if g.id == unit_id:
                return g
        raise KeyError(unit_id)

    def candidates(self) -> list[GeneratorAsset]:
        return [g for g in self.assets if not g.existing]

    def existing_units(self) -> list[GeneratorAsset]:
        return [g for g in self.assets if g.existing]

    def units_in_zone(self, zone: str) -> list[GeneratorAsset]:
        return [g for g in self.assets if g.zone == zone]

    def tech_of(self, g: GeneratorAsset) -> Technology:
        return self.catalog.tech(g.technology)

    def units_of_tech(self, tech_id: str) -> list[GeneratorAsset]:
        return [g for g in self.assets if g.technology == tech_id]

    def is_binary(self, g: GeneratorAsset) -> bool:
        if g.binary is not None:
            return g.binary
        return self.catalog.tech(g.technology).type == THERMAL

    def field_pools(self) -> list[tuple[str, str]]:
        """Sorted (pool, zone) pairs that carry an area ledger."""
        pools = set()
        for t in self.catalog.technologies:
            if t.uses_land:
                for i in self.topology.zones:
                    pools.add((t.field_pool, i))
        for zone, areas in self.supply_chain.field_areas.items():
            for pool in areas:
                pools.add((pool, zone))
        return sorted(pools)

    def retire_year_existing(self, g: GeneratorAsset) -> Optional[int]:
        """In-horizon retirement year of an existing unit, or None."""
        if g.retirement_year is None:
            return None
        if g.retirement_year in self.time.years:
            return g.retirement_year
        return None


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class Finding:
    severity: str        # "error" | "warning"
    code: str
    message: str


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)

    def error(self, code: str, message: str) -> None:
        self.findings.append(Finding("error", code, message))

    def warn(self, code: str, message: str) -> None:
        self.findings.append(Finding("warning", code, message))

    @property
    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "error"]

    @property
    def warnings(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors


def _check_id(rep: ValidationReport, kind: str, value: str) -> None:
    if not isinstance(value, str) or not _ID_RE.match(value):
        rep.error("bad-id", f"{kind} id {value!r} is empty or uses reserved characters")


def validate(model: SystemModel) -> ValidationReport:
    """Check every dataset invariant; findings are data, never exceptions."""
    rep = ValidationReport()
    topo, cat, time = model.topology, model.catalog, model.time

    # topology
    if len(set(topo.zones)) != len(topo.zones):
        rep.error("dup-zone", "zone ids are not unique")
    for z in topo.zones:
        _check_id(rep, "zone", z)
    for l in topo.corridors:
        _check_id(rep, "corridor", l.id)
        for end in (l.from_zone, l.to_zone):
            if end not in topo.zones:
                rep.error("unknown-zone", f"corridor {l.id} references unknown zone {end!r}")
        if l.from_zone == l.to_zone:
            rep.error("loop-corridor", f"corridor {l.id} endpoints are not distinct")
        if l.capacity_mw < 0:
            rep.error("neg-capacity", f"corridor {l.id} transfer capacity is negative")

    # catalog
    tech_ids = [t.id for t in cat.technologies]
    if len(set(tech_ids)) != len(tech_ids):
        rep.error("dup-tech", "technology ids are not unique")
    for t in cat.technologies:
        _check_id(rep, "technology", t.id)
        if t.type not in TECH_TYPES:
            rep.error("bad-tech-type", f"technology {t.id} has unknown type {t.type!r}")
        if t.capacity_density_mw_km2 is not None and t.capacity_density_mw_km2 <= 0:
            rep.error("bad-density",
                      f"technology {t.id} capacity density must be > 0 for land-using technologies")
        for y, v in t.elcc.items():
            if not 0.0 <= v <= 1.0:
                rep.error("bad-elcc", f"technology {t.id} ELCC {v} in year {y} outside [0,1]")
    for m in cat.materials:
        _check_id(rep, "material", m)
    for c in cat.components:
        _check_id(rep, "component", c.id)
        for m, v in c.materials.items():
            if m not in cat.materials:
                rep.error("unknown-material",
                          f"component {c.id} references unknown material {m!r}")
            if v < 0:
                rep.error("neg-intensity", f"component {c.id} material demand for {m} is negative")
    comp_ids = {c.id for c in cat.components}
    for p in cat.products:
        _check_id(rep, "product", p.id)
        if p.technology not in tech_ids:
            rep.error("unknown-tech", f"product {p.id} references unknown technology {p.technology!r}")
        for cref, v in p.components.items():
            if cref not in comp_ids:
                rep.error("unknown-component",
                          f"product {p.id} references unknown component {cref!r}")
            if v < 0:
                rep.error("neg-intensity", f"product {p.id} component demand for {cref} is negative")

    # time structure
    if list(time.years) != sorted(set(time.years)):
        rep.error("bad-years", "years must be strictly increasing")
    if time.hours < 1:
        rep.error("bad-hours", "need at least one hour per representative day")
    if time.discount_rate < 0:
        rep.error("bad-discount", "discount rate is negative")
    for d in time.days:
        _check_id(rep, "day", d)
    for y in time.years:
        total = 0.0
        for d in time.days:
            w = time.weights.get(d, {}).get(y)
            if w is None:
                rep.error("missing-weight", f"day {d} has no occurrence weight for year {y}")
            elif w <= 0:
                rep.error("bad-weight", f"day {d} weight {w} in year {y} must be > 0")
            else:
                total += w
        if time.days and not 364.0 <= total <= 366.0:
            rep.error("bad-weight-sum",
                      f"day weights for year {y} sum to {total}, expected a calendar year")

    # assets
    unit_ids = [g.id for g in model.assets]
    if len(set(unit_ids)) != len(unit_ids):
        rep.error("dup-unit", "unit ids are not unique")
    product_ids = {p.id: p for p in cat.products}
    for g in model.assets:
        _check_id(rep, "unit", g.id)
        if g.zone not in topo.zones:
            rep.error("unknown-zone", f"unit {g.id} references unknown zone {g.zone!r}")
        if g.technology not in tech_ids:
            rep.error("unknown-tech", f"unit {g.id} references unknown technology {g.technology!r}")
            continue
        tech = cat.tech(g.technology)
        if g.capacity_mw <= 0:
            rep.error("bad-capacity", f"unit {g.id} power capacity must be > 0")
        is_storage = tech.type == STORAGE
        has_storage_fields = (g.energy_capacity_mwh is not None
                              or g.charge_efficiency is not None
                              or g.discharge_efficiency is not None)
        if is_storage:
            if g.energy_capacity_mwh is None or g.energy_capacity_mwh <= 0:
                rep.error("bad-energy", f"storage unit {g.id} needs energy capacity > 0")
            for name, eff in (("charge", g.charge_efficiency),
                              ("discharge", g.discharge_efficiency)):
                if eff is None or not 0.0 < eff <= 1.0:
                    rep.error("bad-efficiency",
                              f"storage unit {g.id} {name} efficiency out of (0,1]")
        elif has_storage_fields:
            rep.error("not-storage",
                      f"unit {g.id} carries storage fields but technology {tech.id} is {tech.type}")
        if g.existing:
            if g.retirement_year is None:
                rep.error("missing-retirement", f"existing unit {g.id} needs a retirement year")
            if g.lead_time_years is not None:
                rep.warn("ignored-field", f"existing unit {g.id}: lead time is ignored")
        else:
            if g.lead_time_years is None or g.lead_time_years < 0:
                rep.error("bad-lead", f"candidate {g.id} needs a lead time >= 0 years")
            if g.lifetime_years is None or g.lifetime_years < 1:
                rep.error("bad-lifetime", f"candidate {g.id} needs a lifetime >= 1 year")
            if g.product is not None:
                prod = product_ids.get(g.product)
                if prod is None:
                    rep.error("unknown-product", f"candidate {g.id} references unknown product {g.product!r}")
                elif prod.technology != g.technology:
                    rep.error("wrong-product",
                              f"candidate {g.id}: product {g.product} belongs to technology "
                              f"{prod.technology}, not {g.technology}")
            if (g.lead_time_years is not None and time.years
                    and g.lead_time_years >= len(time.years)):
                rep.warn("never-buildable",
                         f"candidate {g.id} lead time {g.lead_time_years}y exceeds the horizon; "
                         "it can never operate in-horizon")

    # scenario
    sc = model.scenario
    for y in time.years:
        if y not in sc.peak_load:
            rep.error("missing-peak", f"no system peak load for year {y}")
    for zone in topo.zones:
        for d in time.days:
            for y in time.years:
                prof = sc.load.get(zone, {}).get(d, {}).get(y)
                if prof is None:
                    rep.error("missing-load", f"no load profile for zone {zone}, day {d}, year {y}")
                    continue
                if len(prof) != time.hours:
                    rep.error("bad-profile",
                              f"load profile for {zone}/{d}/{y} has {len(prof)} hours, expected {time.hours}")
                if any(v < 0 for v in prof):
                    rep.error("neg-load", f"negative load in {zone}/{d}/{y}")
    for key, by_day in sc.availability.items():
        flat = [v for by_year in by_day.values() for prof in by_year.values() for v in prof]
        if any(not 0.0 <= v <= 1.0 for v in flat):
            rep.error("bad-availability", f"availability for {key} outside [0,1]")
        if flat and max(flat) == 0.0:
            rep.warn("zero-availability", f"availability for {key} is identically zero")
    for y in time.years:
        rm = sc.reserve_margin.get(y, 0.0)
        if rm < 0:
            rep.error("bad-reserve-margin", f"reserve margin for year {y} is negative")
        hourly_sums = []
        for d in time.days:
            for h in range(time.hours):
                tot = 0.0
                complete = True
                for zone in topo.zones:
                    prof = sc.load.get(zone, {}).get(d, {}).get(y)
                    if prof is None or len(prof) <= h:
                        complete = False
                        break
                    tot += prof[h]
                if complete:
                    hourly_sums.append(tot)
        if hourly_sums and y in sc.peak_load and sc.peak_load[y] < max(hourly_sums) - 1e-9:
            rep.warn("peak-below-profile",
                     f"declared peak {sc.peak_load[y]} MW in {y} is below the profile "
                     f"maximum {max(hourly_sums)} MW")
    for tech_id, by_year in sc.rps.items():
        if tech_id not in tech_ids:
            rep.error("unknown-tech", f"RPS mandate references unknown technology {tech_id!r}")
        for y, share in by_year.items():
            if not 0.0 <= share <= 1.0:
                rep.error("bad-rps", f"RPS share {share} for {tech_id}/{y} outside [0,1]")
    for zone, by_day in sc.imports.items():
        if zone not in topo.zones:
            rep.error("unknown-zone", f"imports declared for unknown zone {zone!r}")
            continue
        for d, by_year in by_day.items():
            for y, prof in by_year.items():
                loads = sc.load.get(zone, {}).get(d, {}).get(y)
                if loads is None or len(loads) != len(prof):
                    continue
                if any(imp > lo + 1e-9 for imp, lo in zip(prof, loads)):
                    rep.warn("imports-exceed-load",
                             f"imports for {zone}/{d}/{y} exceed load in some hour; "
                             "excess power has nowhere to go and the hourly "
                             "balance may be unsatisfiable")
                    break

    # renewables need an availability profile
    for g in model.assets:
        if g.technology in tech_ids and cat.tech(g.technology).type == RENEWABLE:
            if f"{g.zone}/{g.technology}" not in sc.availability:
                rep.error("missing-availability",
                          f"renewable unit {g.id} has no availability profile for "
                          f"{g.zone}/{g.technology}")

    # supply chain
    scd = model.supply_chain
    for m, by_year in scd.primary_supply.items():
        if m not in cat.materials:
            rep.error("unknown-material", f"primary supply declared for unknown material {m!r}")
        for y, v in by_year.items():
            if v < 0:
                rep.error("neg-supply", f"primary supply for {m}/{y} is negative")
    for unit_id, rates in scd.recovery_rates.items():
        g = next((a for a in model.assets if a.id == unit_id), None)
        if g is None:
            rep.error("unknown-unit", f"recovery rates declared for unknown unit {unit_id!r}")
            continue
        for m, v in rates.items():
            if m not in cat.materials:
                rep.error("unknown-material",
                          f"recovery rate for unit {unit_id} references unknown material {m!r}")
            if v < 0:
                rep.error("neg-recovery", f"recovery rate for {unit_id}/{m} is negative")
        if g.technology in tech_ids and not cat.tech_consumes_materials(g.technology):
            rep.error("recovery-without-materials",
                      f"unit {unit_id}: recovery declared but technology {g.technology} "
                      "has no modeled material chain")
    for m, v in scd.initial_stock.items():
        if v < 0:
            rep.error("neg-stock", f"initial stock for {m} is negative")
    for zone, pools in scd.field_areas.items():
        if zone not in topo.zones:
            rep.error("unknown-zone", f"field areas declared for unknown zone {zone!r}")
        for pool, a in pools.items():
            if a < 0:
                rep.error("neg-area", f"field area for {pool}/{zone} is negative")

    # penalties
    pen = model.penalties
    for name, v in (("VOLL", pen.voll_per_mwh),
                    ("reserve margin", pen.reserve_margin_per_mw_year),
                    ("RPS", pen.rps_per_mwh)):
        if v < 0:
            rep.error("neg-penalty", f"{name} penalty price is negative")

    return rep


# ---------------------------------------------------------------------------
# canonical serialization and digest

def model_to_dict(model: SystemModel) -> dict:
    """Plain-dict form used for digesting; int keys become strings."""
    return asdict(model)


def _canonical(obj):
    if isinstance(obj, dict):
        return {str(k): _canonical(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    return obj


def model_digest(model: SystemModel) -> str:
    payload = json.dumps(_canonical(model_to_dict(model)), sort_keys=True,
                         separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
