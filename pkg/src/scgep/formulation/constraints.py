"""Constraint rows for one planning year, emitted over a context.

The same emitters serve two builders.  A context answers two kinds of
question: "what is this year's column called" (plain key construction)
and "how do I reference a quantity from an earlier year" — which the
monolithic context resolves to a real column or an initial-state
constant, and the stage context resolves to a ``z`` state-copy column.
Because the emitters are shared, the two problem forms are structurally
identical row for row.
"""

from __future__ import annotations

from ..keys import row_key, variable_key
from ..milp import SparseProblem
from ..model import RENEWABLE, STORAGE, THERMAL, SystemModel
from .objective import adjusted_investment_cost, can_operate_in_horizon

# a reference to a quantity that may live outside the current problem:
# (column-name or None, constant part)
Term = tuple


class YearContext:
    """Column naming plus previous-year reference resolution."""

    def __init__(self, model: SystemModel, prob: SparseProblem, year: int):
        self.model = model
        self.prob = prob
        self.year = year

    def col(self, kind: str, *idx) -> str:
        return variable_key(kind, *idx, self.year)

    # previous-year references; overridden per builder -------------------
    def prev_stock(self, material: str) -> Term:
        raise NotImplementedError

    def prev_field(self, pool: str, zone: str) -> Term:
        raise NotImplementedError

    def prev_status(self, unit_id: str) -> Term:
        raise NotImplementedError

    def lagged_decision(self, unit_id: str, lag: int) -> Term:
        """The build decision taken ``lag`` years before this one (lag >= 1)."""
        raise NotImplementedError

    def decision_term(self, unit_id: str, lag: int) -> Term:
        if lag == 0:
            return (self.col("decision", unit_id), 0.0)
        return self.lagged_decision(unit_id, lag)


class Row:
    """Accumulates coefficients and constants, then lands in the problem."""

    def __init__(self, ctx: YearContext):
        self.ctx = ctx
        self.coefs: list[tuple[str, float]] = []
        self.const = 0.0

    def add(self, col: str, coef: float) -> "Row":
        if coef != 0.0:
            self.coefs.append((col, coef))
        return self

    def add_term(self, term: Term, coef: float) -> "Row":
        col, const = term
        if col is not None:
            self.add(col, coef)
        self.const += coef * const
        return self

    def emit(self, name: str, sense: str, rhs: float) -> None:
        self.ctx.prob.add_row(name, self.coefs, sense, rhs - self.const)


# ---------------------------------------------------------------------------
# columns

def add_year_columns(ctx: YearContext) -> None:
    model, prob, y = ctx.model, ctx.prob, ctx.year
    cat, time, pen = model.catalog, model.time, model.penalties

    for g in model.assets:
        if g.existing:
            prob.add_col(ctx.col("build", g.id), 0.0, 0.0)
            retires = 1.0 if g.retirement_year == y else 0.0
            prob.add_col(ctx.col("retire", g.id), retires, retires)
        else:
            ub_d = 1.0 if can_operate_in_horizon(model, g, y) else 0.0
            prob.add_col(ctx.col("decision", g.id), 0.0, ub_d,
                         obj=adjusted_investment_cost(model, g, y) * g.capacity_mw,
                         integer=model.is_binary(g))
            prob.add_col(ctx.col("build", g.id), 0.0, 1.0)
            prob.add_col(ctx.col("retire", g.id), 0.0, 1.0)
        prob.add_col(ctx.col("status", g.id), 0.0, 1.0,
                     obj=g.fixed_om_for(y) * g.capacity_mw)

    for m in cat.materials:
        prob.add_col(ctx.col("material-use", m), 0.0)
        prob.add_col(ctx.col("stock", m), 0.0)
    for comp in cat.components:
        prob.add_col(ctx.col("component-make", comp.id), 0.0)
    for p in cat.products:
        prob.add_col(ctx.col("product-make", p.id, p.technology), 0.0)
    for pool, zone in model.field_pools():
        prob.add_col(ctx.col("field", pool, zone), 0.0)

    for g in model.assets:
        tech = cat.tech(g.technology)
        for t in time.days:
            if tech.type == STORAGE:
                prob.add_col(ctx.col("soc", g.id, t, 0), 0.0)
            for h in time.hour_labels():
                n = time.weight(t, y)
                if tech.type == STORAGE:
                    prob.add_col(ctx.col("charge", g.id, t, h), 0.0,
                                 obj=n * g.variable_cost)
                    prob.add_col(ctx.col("discharge", g.id, t, h), 0.0,
                                 obj=n * g.variable_cost)
                    prob.add_col(ctx.col("soc", g.id, t, h), 0.0)
                else:
                    prob.add_col(ctx.col("gen-output", g.id, t, h), 0.0,
                                 obj=n * g.variable_cost)

    for corridor in model.topology.corridors:
        for t in time.days:
            for h in time.hour_labels():
                prob.add_col(ctx.col("flow", corridor.id, t, h),
                             0.0, corridor.capacity_mw)

    for zone in model.topology.zones:
        for t in time.days:
            n = time.weight(t, y)
            for h in time.hour_labels():
                load = model.scenario.load_at(zone, t, y)[h - 1]
                prob.add_col(ctx.col("load-shed", zone, t, h), 0.0, load,
                             obj=n * pen.voll_per_mwh)

    prob.add_col(ctx.col("reserve-shortfall"), 0.0,
                 obj=pen.reserve_margin_per_mw_year)
    for tech_id in sorted(model.scenario.rps):
        prob.add_col(ctx.col("rps-shortfall", tech_id), 0.0,
                     obj=pen.rps_per_mwh)


# ---------------------------------------------------------------------------
# supply chain rows

def emit_supply_chain(ctx: YearContext) -> None:
    model, y = ctx.model, ctx.year
    cat, scd = model.catalog, model.supply_chain

    # material use must cover the materials of the components made
    for m in cat.materials:
        row = Row(ctx).add(ctx.col("material-use", m), 1.0)
        for comp in cat.components:
            need = comp.materials.get(m, 0.0)
            row.add(ctx.col("component-make", comp.id), -need)
        row.emit(row_key("mat-cover", m, y), ">=", 0.0)

    # components made must cover the products made
    for comp in cat.components:
        row = Row(ctx).add(ctx.col("component-make", comp.id), 1.0)
        for p in cat.products:
            need = p.components.get(comp.id, 0.0)
            row.add(ctx.col("product-make", p.id, p.technology), -need)
        row.emit(row_key("comp-cover", comp.id, y), ">=", 0.0)

    # committed capacity of a technology is capped by its products made
    techs_with_candidates = sorted({g.technology for g in model.candidates()})
    for tech_id in techs_with_candidates:
        products = cat.products_of(tech_id)
        if not products:
            continue
        row = Row(ctx)
        for g in model.candidates():
            if g.technology == tech_id:
                row.add(ctx.col("decision", g.id), g.capacity_mw)
        for p in products:
            row.add(ctx.col("product-make", p.id, p.technology), -1.0)
        row.emit(row_key("prod-cap", tech_id, y), "<=", 0.0)

    # stock recursion: closing = opening + primary supply - use + recovery
    for m in cat.materials:
        row = (Row(ctx)
               .add(ctx.col("stock", m), 1.0)
               .add_term(ctx.prev_stock(m), -1.0)
               .add(ctx.col("material-use", m), 1.0))
        for g in model.assets:
            rate = scd.recovery(g.id, m)
            if rate:
                row.add(ctx.col("retire", g.id), -rate * g.capacity_mw)
        row.emit(row_key("stock", m, y), "==", scd.supply(m, y))

    # land ledger per pool and zone: completions consume area
    for pool, zone in model.field_pools():
        row = (Row(ctx)
               .add(ctx.col("field", pool, zone), 1.0)
               .add_term(ctx.prev_field(pool, zone), -1.0))
        for g in model.assets:
            tech = cat.tech(g.technology)
            if g.zone == zone and tech.uses_land and tech.field_pool == pool:
                row.add(ctx.col("build", g.id),
                        g.capacity_mw / tech.capacity_density_mw_km2)
        row.emit(row_key("field", pool, zone, y), "==", 0.0)

    # area already promised to decisions still in flight must fit in what
    # is left; keeps any reachable state feasible for every later year
    for pool, zone in model.field_pools():
        row = Row(ctx).add(ctx.col("field", pool, zone), 1.0)
        touched = False
        for g in model.candidates():
            tech = cat.tech(g.technology)
            if g.zone != zone or not tech.uses_land or tech.field_pool != pool:
                continue
            per_unit = g.capacity_mw / tech.capacity_density_mw_km2
            for lag in range(0, (g.lead_time_years or 0)):
                row.add_term(ctx.decision_term(g.id, lag), -per_unit)
                touched = True
        if touched:
            row.emit(row_key("area-commit", pool, zone, y), ">=", 0.0)

    # a new decision may not overlap the operating window of an earlier
    # one; equivalent to the status ceiling at the future completion year
    for g in model.candidates():
        lifetime = g.lifetime_years or 1
        if lifetime < 2:
            continue
        row = Row(ctx)
        for lag in range(0, lifetime):
            row.add_term(ctx.decision_term(g.id, lag), 1.0)
        row.emit(row_key("spacing", g.id, y), "<=", 1.0)


# ---------------------------------------------------------------------------
# build / retire / status rows

def emit_expansion(ctx: YearContext) -> None:
    model = ctx.model
    for g in model.candidates():
        lead = g.lead_time_years or 0
        lifetime = g.lifetime_years or 1
        (Row(ctx)
         .add(ctx.col("build", g.id), 1.0)
         .add_term(ctx.decision_term(g.id, lead), -1.0)
         .emit(row_key("lead", g.id, ctx.year), "==", 0.0))
        (Row(ctx)
         .add(ctx.col("retire", g.id), 1.0)
         .add_term(ctx.decision_term(g.id, lead + lifetime), -1.0)
         .emit(row_key("retire-life", g.id, ctx.year), "==", 0.0))
    for g in model.assets:
        (Row(ctx)
         .add(ctx.col("status", g.id), 1.0)
         .add_term(ctx.prev_status(g.id), -1.0)
         .add(ctx.col("build", g.id), -1.0)
         .add(ctx.col("retire", g.id), 1.0)
         .emit(row_key("status", g.id, ctx.year), "==", 0.0))


# ---------------------------------------------------------------------------
# hourly operations

def emit_operations(ctx: YearContext) -> None:
    model, y = ctx.model, ctx.year
    time, sc, cat = model.time, model.scenario, model.catalog

    for zone in model.topology.zones:
        units = model.units_in_zone(zone)
        inflows = model.topology.corridors_to(zone)
        outflows = model.topology.corridors_from(zone)
        for t in time.days:
            loads = sc.load_at(zone, t, y)
            imports = sc.imports_at(zone, t, y)
            for h in time.hour_labels():
                row = Row(ctx)
                for g in units:
                    if cat.tech(g.technology).type == STORAGE:
                        row.add(ctx.col("discharge", g.id, t, h), 1.0)
                        row.add(ctx.col("charge", g.id, t, h), -1.0)
                    else:
                        row.add(ctx.col("gen-output", g.id, t, h), 1.0)
                for corridor in inflows:
                    row.add(ctx.col("flow", corridor.id, t, h), 1.0)
                for corridor in outflows:
                    row.add(ctx.col("flow", corridor.id, t, h), -1.0)
                row.add(ctx.col("load-shed", zone, t, h), 1.0)
                rhs = loads[h - 1] - (imports[h - 1] if imports else 0.0)
                row.emit(row_key("balance", zone, t, h, y), "==", rhs)

    for g in model.assets:
        tech = cat.tech(g.technology)
        if tech.type == STORAGE:
            continue
        for t in time.days:
            avail = (sc.availability_at(g.zone, g.technology, t, y)
                     if tech.type == RENEWABLE else None)
            for h in time.hour_labels():
                factor = avail[h - 1] if avail is not None else 1.0
                tag = "renew-cap" if tech.type == RENEWABLE else "thermal-cap"
                (Row(ctx)
                 .add(ctx.col("gen-output", g.id, t, h), 1.0)
                 .add(ctx.col("status", g.id), -factor * g.capacity_mw)
                 .emit(row_key(tag, g.id, t, h, y), "<=", 0.0))

    # annual firm-capacity requirement with a priced shortfall
    row = Row(ctx)
    for g in model.assets:
        credit = cat.tech(g.technology).elcc_for(y) * g.capacity_mw
        row.add(ctx.col("status", g.id), credit)
    row.add(ctx.col("reserve-shortfall"), 1.0)
    margin = sc.reserve_margin.get(y, 0.0)
    row.emit(row_key("reserve", y), ">=", (1.0 + margin) * sc.peak_load[y])

    # per-technology clean-energy quota on annual energy
    for tech_id in sorted(sc.rps):
        share = sc.rps[tech_id].get(y, 0.0)
        annual_load = 0.0
        for zone in model.topology.zones:
            for t in time.days:
                n = time.weight(t, y)
                annual_load += n * sum(sc.load_at(zone, t, y))
        row = Row(ctx)
        for g in model.units_of_tech(tech_id):
            for t in time.days:
                n = time.weight(t, y)
                for h in time.hour_labels():
                    if cat.tech(g.technology).type == STORAGE:
                        row.add(ctx.col("discharge", g.id, t, h), n)
                    else:
                        row.add(ctx.col("gen-output", g.id, t, h), n)
        row.add(ctx.col("rps-shortfall", tech_id), 1.0)
        row.emit(row_key("rps", tech_id, y), ">=", share * annual_load)


# ---------------------------------------------------------------------------
# storage coupling

def emit_storage(ctx: YearContext) -> None:
    model, y = ctx.model, ctx.year
    time = model.time
    for g in model.assets:
        tech = model.catalog.tech(g.technology)
        if tech.type != STORAGE:
            continue
        energy = g.energy_capacity_mwh
        half = 0.5 * energy
        eff_c = g.charge_efficiency
        eff_d = g.discharge_efficiency
        for t in time.days:
            (Row(ctx)
             .add(ctx.col("soc", g.id, t, 0), 1.0)
             .add(ctx.col("status", g.id), -half)
             .emit(row_key("soc-open", g.id, t, y), "==", 0.0))
            for h in time.hour_labels():
                (Row(ctx)
                 .add(ctx.col("soc", g.id, t, h), 1.0)
                 .add(ctx.col("soc", g.id, t, h - 1), -1.0)
                 .add(ctx.col("charge", g.id, t, h), -eff_c)
                 .add(ctx.col("discharge", g.id, t, h), 1.0 / eff_d)
                 .emit(row_key("soc-bal", g.id, t, h, y), "==", 0.0))
                (Row(ctx)
                 .add(ctx.col("charge", g.id, t, h), 1.0)
                 .add(ctx.col("status", g.id), -g.capacity_mw)
                 .emit(row_key("chg-cap", g.id, t, h, y), "<=", 0.0))
                (Row(ctx)
                 .add(ctx.col("discharge", g.id, t, h), 1.0)
                 .add(ctx.col("status", g.id), -g.capacity_mw)
                 .emit(row_key("dis-cap", g.id, t, h, y), "<=", 0.0))
            for h in range(0, time.hours + 1):
                (Row(ctx)
                 .add(ctx.col("soc", g.id, t, h), 1.0)
                 .add(ctx.col("status", g.id), -energy)
                 .emit(row_key("soc-cap", g.id, t, h, y), "<=", 0.0))
            (Row(ctx)
             .add(ctx.col("soc", g.id, t, time.hours), 1.0)
             .add(ctx.col("status", g.id), -half)
             .emit(row_key("soc-close", g.id, t, y), "==", 0.0))


def emit_year(ctx: YearContext) -> None:
    """All rows for one year, in a fixed order."""
    emit_supply_chain(ctx)
    emit_expansion(ctx)
    emit_operations(ctx)
    emit_storage(ctx)
