"""File-backed datasets: a JSON manifest naming JSON documents plus CSV
hourly series, loaded into a validated ``SystemModel``.

Two time-structure modes coexist in the manifest's ``time`` section:

* ``explicit`` — representative days, weights and per-day profiles are
  stated outright (header ``entity,day,year,h1..hH``);
* ``cluster`` — raw calendar-year series (header ``entity,year,h1..h8760``)
  are reduced to k representative days per year by the deterministic
  k-means in :mod:`scgep.ingest.cluster`.

Entities encode what a row is: ``load/<zone>``, ``availability/<zone>/<tech>``
or ``imports/<zone>``.  All parse failures carry file and line context.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from ..model import (
    Component, Corridor, GeneratorAsset, PenaltyPrices, Product, ScenarioData,
    SupplyChainData, SystemModel, Technology, TechnologyCatalog, TimeStructure,
    Topology, ValidationReport, validate,
)
from .cluster import RawHourlySeries, cluster_representative_days, default_seed


class LoadError(Exception):
    """Anything that prevents building a model from files."""


class DatasetValidationError(LoadError):
    def __init__(self, report: ValidationReport):
        self.report = report
        lines = [f"  [{f.code}] {f.message}" for f in report.errors]
        super().__init__("dataset failed validation:\n" + "\n".join(lines))


@dataclass
class DatasetManifest:
    name: str
    base: Path
    topology: Path
    catalog: Path
    assets: Path
    policies: Path
    supply_chain: Path
    time: dict

    def all_paths(self) -> list[Path]:
        paths = [self.topology, self.catalog, self.assets, self.policies,
                 self.supply_chain]
        for key in ("profiles", "series"):
            rel = self.time.get(key) or self.time.get("cluster", {}).get(key)
            if rel:
                paths.append(self.base / rel)
        return paths


def _read_json(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise LoadError(f"{path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise LoadError(f"{path}:{e.lineno}: {e.msg}") from None


def _int_keys(d: dict, path: Path, what: str) -> dict:
    out = {}
    for k, v in d.items():
        try:
            out[int(k)] = v
        except (TypeError, ValueError):
            raise LoadError(f"{path}: {what} has non-year key {k!r}") from None
    return out


def load_manifest(path: Union[str, Path]) -> DatasetManifest:
    path = Path(path)
    doc = _read_json(path)
    base = path.parent
    try:
        manifest = DatasetManifest(
            name=str(doc.get("name", base.name)),
            base=base,
            topology=base / doc["topology"],
            catalog=base / doc["catalog"],
            assets=base / doc["assets"],
            policies=base / doc["policies"],
            supply_chain=base / doc["supply_chain"],
            time=doc["time"],
        )
    except KeyError as e:
        raise LoadError(f"{path}: manifest is missing the {e.args[0]!r} entry") from None
    for p in manifest.all_paths():
        if not p.exists():
            raise LoadError(f"{path}: referenced file does not exist: {p}")
    return manifest


# ---------------------------------------------------------------------------
# sections

def _load_topology(path: Path) -> Topology:
    doc = _read_json(path)
    corridors = tuple(
        Corridor(id=str(c["id"]), from_zone=str(c["from_zone"]),
                 to_zone=str(c["to_zone"]), capacity_mw=float(c["capacity_mw"]))
        for c in doc.get("corridors", ()))
    return Topology(zones=tuple(str(z) for z in doc.get("zones", ())),
                    corridors=corridors)


def _load_catalog(path: Path) -> TechnologyCatalog:
    doc = _read_json(path)
    techs = tuple(
        Technology(
            id=str(t["id"]), type=str(t["type"]),
            capacity_density_mw_km2=(None if t.get("capacity_density_mw_km2")
                                     is None else float(t["capacity_density_mw_km2"])),
            elcc={int(y): float(v) for y, v in t.get("elcc", {}).items()},
            field=t.get("field"))
        for t in doc.get("technologies", ()))
    comps = tuple(
        Component(id=str(c["id"]),
                  materials={str(m): float(v) for m, v in c.get("materials", {}).items()})
        for c in doc.get("components", ()))
    prods = tuple(
        Product(id=str(p["id"]), technology=str(p["technology"]),
                components={str(c): float(v) for c, v in p.get("components", {}).items()})
        for p in doc.get("products", ()))
    return TechnologyCatalog(technologies=techs,
                             materials=tuple(str(m) for m in doc.get("materials", ())),
                             components=comps, products=prods)


def _load_assets(path: Path) -> tuple[GeneratorAsset, ...]:
    doc = _read_json(path)
    rows = doc if isinstance(doc, list) else doc.get("assets", [])
    out = []
    for i, a in enumerate(rows):
        try:
            out.append(GeneratorAsset(
                id=str(a["id"]), zone=str(a["zone"]),
                technology=str(a["technology"]),
                capacity_mw=float(a["capacity_mw"]),
                existing=bool(a["existing"]),
                product=a.get("product"),
                lead_time_years=(None if a.get("lead_time_years") is None
                                 else int(a["lead_time_years"])),
                lifetime_years=(None if a.get("lifetime_years") is None
                                else int(a["lifetime_years"])),
                binary=a.get("binary"),
                invest_cost=_int_keys(a.get("invest_cost", {}), path,
                                      f"asset {a.get('id')} invest_cost"),
                retirement_year=(None if a.get("retirement_year") is None
                                 else int(a["retirement_year"])),
                energy_capacity_mwh=(None if a.get("energy_capacity_mwh") is None
                                     else float(a["energy_capacity_mwh"])),
                charge_efficiency=(None if a.get("charge_efficiency") is None
                                   else float(a["charge_efficiency"])),
                discharge_efficiency=(None if a.get("discharge_efficiency") is None
                                      else float(a["discharge_efficiency"])),
                fixed_om=_int_keys(a.get("fixed_om", {}), path,
                                   f"asset {a.get('id')} fixed_om"),
                variable_cost=float(a.get("variable_cost", 0.0)),
            ))
        except KeyError as e:
            raise LoadError(f"{path}: asset #{i + 1} is missing {e.args[0]!r}") from None
    return tuple(out)


def _load_supply_chain(path: Path) -> SupplyChainData:
    doc = _read_json(path)
    return SupplyChainData(
        primary_supply={str(m): {int(y): float(v) for y, v in by.items()}
                        for m, by in doc.get("primary_supply", {}).items()},
        recovery_rates={str(u): {str(m): float(v) for m, v in by.items()}
                        for u, by in doc.get("recovery_rates", {}).items()},
        initial_stock={str(m): float(v)
                       for m, v in doc.get("initial_stock", {}).items()},
        field_areas={str(z): {str(p): float(v) for p, v in by.items()}
                     for z, by in doc.get("field_areas", {}).items()},
    )


def _load_policies(path: Path):
    doc = _read_json(path)
    try:
        pen = doc["penalties"]
        penalties = PenaltyPrices(
            voll_per_mwh=float(pen["voll_per_mwh"]),
            reserve_margin_per_mw_year=float(pen["reserve_margin_per_mw_year"]),
            rps_per_mwh=float(pen["rps_per_mwh"]))
    except KeyError as e:
        raise LoadError(f"{path}: penalties section is missing {e.args[0]!r}") from None
    peak = {int(y): float(v) for y, v in doc.get("peak_load", {}).items()}
    margin = {int(y): float(v) for y, v in doc.get("reserve_margin", {}).items()}
    rps = {str(t): {int(y): float(v) for y, v in by.items()}
           for t, by in doc.get("rps", {}).items()}
    return penalties, peak, margin, rps


# ---------------------------------------------------------------------------
# hourly series

def _parse_entity(entity: str, path: Path, line: int):
    parts = entity.split("/")
    if parts[0] == "load" and len(parts) == 2:
        return "load", parts[1]
    if parts[0] == "imports" and len(parts) == 2:
        return "imports", parts[1]
    if parts[0] == "availability" and len(parts) == 3:
        return "availability", f"{parts[1]}/{parts[2]}"
    raise LoadError(f"{path}:{line}: unknown series entity {entity!r}; expected "
                    "load/<zone>, imports/<zone> or availability/<zone>/<tech>")


def _read_csv_rows(path: Path, want_first: list[str]):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise LoadError(f"{path}: {e.strerror or e}") from None
    rows = list(csv.reader(text.splitlines()))
    if not rows:
        raise LoadError(f"{path}:1: empty series file")
    header = rows[0]
    if [h.strip() for h in header[:len(want_first)]] != want_first:
        raise LoadError(f"{path}:1: header must start with {','.join(want_first)}")
    return rows


def _floats(cells: list[str], path: Path, line: int) -> tuple[float, ...]:
    try:
        return tuple(float(c) for c in cells)
    except ValueError as e:
        raise LoadError(f"{path}:{line}: {e}") from None


def _load_explicit_profiles(path: Path, hours: int):
    """entity,day,year,h1..hH rows into the scenario's nested dicts."""
    rows = _read_csv_rows(path, ["entity", "day", "year"])
    if len(rows[0]) != 3 + hours:
        raise LoadError(f"{path}:1: expected {hours} hour columns, "
                        f"found {len(rows[0]) - 3}")
    load: dict = {}
    avail: dict = {}
    imports: dict = {}
    for i, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3 + hours:
            raise LoadError(f"{path}:{i}: expected {3 + hours} cells, got {len(row)}")
        kind, key = _parse_entity(row[0].strip(), path, i)
        day = row[1].strip()
        try:
            year = int(row[2])
        except ValueError:
            raise LoadError(f"{path}:{i}: year {row[2]!r} is not an integer") from None
        values = _floats(row[3:], path, i)
        target = {"load": load, "availability": avail, "imports": imports}[kind]
        target.setdefault(key, {}).setdefault(day, {})[year] = values
    return load, avail, imports


def _load_raw_series(path: Path) -> list[RawHourlySeries]:
    rows = _read_csv_rows(path, ["entity", "year"])
    out = []
    for i, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            year = int(row[1])
        except ValueError:
            raise LoadError(f"{path}:{i}: year {row[1]!r} is not an integer") from None
        out.append(RawHourlySeries(entity=row[0].strip(), year=year,
                                   values=_floats(row[2:], path, i)))
    if not out:
        raise LoadError(f"{path}: no series rows")
    return out


def _cluster_time(manifest: DatasetManifest, years: list[int],
                  spec: dict, peak_load: dict[int, float]):
    path = manifest.base / spec["series"]
    k = int(spec["k"])
    hours = int(spec.get("hours_per_day", 24))
    weights_cfg = spec.get("feature_weights")
    seed = int(spec["seed"]) if "seed" in spec else default_seed()
    all_series = _load_raw_series(path)
    by_year: dict[int, list[RawHourlySeries]] = {}
    for s in all_series:
        by_year.setdefault(s.year, []).append(s)
    missing = [y for y in years if y not in by_year]
    if missing:
        raise LoadError(f"{path}: no hourly series for year(s) {missing}")

    days = [f"t{i + 1}" for i in range(k)]
    weights: dict[str, dict[int, float]] = {d: {} for d in days}
    load: dict = {}
    avail: dict = {}
    imports: dict = {}
    for y in years:
        try:
            res = cluster_representative_days(by_year[y], k,
                                              hours_per_day=hours,
                                              feature_weights=weights_cfg,
                                              seed=seed)
        except ValueError as e:
            raise LoadError(f"{path}: {e}") from None
        for d in days:
            weights[d][y] = res.weights[d]
        for entity, per_day in res.profiles.items():
            kind, key = _parse_entity(entity, path, 1)
            target = {"load": load, "availability": avail, "imports": imports}[kind]
            for d, values in per_day.items():
                target.setdefault(key, {}).setdefault(d, {})[y] = values
        if y not in peak_load:
            # reserve requirements must see the real coincident peak, not
            # the smoothed representative days
            zones = [s for s in by_year[y] if s.entity.startswith("load/")]
            if zones:
                total = [sum(vals) for vals in zip(*(s.values for s in zones))]
                peak_load[y] = max(total)
    return days, hours, weights, load, avail, imports


def load_dataset(manifest: Union[str, Path, DatasetManifest]) -> SystemModel:
    """Build and validate a model from a manifest (path or object)."""
    if not isinstance(manifest, DatasetManifest):
        manifest = load_manifest(manifest)

    topology = _load_topology(manifest.topology)
    catalog = _load_catalog(manifest.catalog)
    assets = _load_assets(manifest.assets)
    penalties, peak_load, reserve_margin, rps = _load_policies(manifest.policies)
    supply = _load_supply_chain(manifest.supply_chain)

    tspec = manifest.time
    try:
        years = [int(y) for y in tspec["years"]]
    except KeyError:
        raise LoadError(f"{manifest.base}: time section is missing 'years'") from None
    discount = float(tspec.get("discount_rate", 0.0))

    if "cluster" in tspec:
        days, hours, weights, load, avail, imports = _cluster_time(
            manifest, years, tspec["cluster"], peak_load)
    else:
        try:
            days = [str(d) for d in tspec["days"]]
            hours = int(tspec["hours"])
            weights = {str(d): _int_keys(by, manifest.base, f"weights[{d}]")
                       for d, by in tspec["weights"].items()}
            profiles_rel = tspec["profiles"]
        except KeyError as e:
            raise LoadError(f"{manifest.base}: time section is missing "
                            f"{e.args[0]!r}") from None
        load, avail, imports = _load_explicit_profiles(
            manifest.base / profiles_rel, hours)

    scenario = ScenarioData(load=load, peak_load=peak_load,
                            availability=avail, reserve_margin=reserve_margin,
                            rps=rps, imports=imports)
    model = SystemModel(
        name=manifest.name,
        topology=topology, catalog=catalog, assets=assets,
        time=TimeStructure(years=tuple(years), days=tuple(days), hours=hours,
                           weights=weights, discount_rate=discount),
        scenario=scenario, supply_chain=supply, penalties=penalties)
    report = validate(model)
    if not report.ok:
        raise DatasetValidationError(report)
    return model
