"""Human-readable descriptions of every column and row family.

Each entry states the index signature, the unit of measure, and the
algebra the row enforces (or the quantity the column carries), written
so a plan file or LP dump can be read without the builder source.
"""

from __future__ import annotations

COLUMN_DOCS: dict[str, tuple[str, str, str]] = {
    # family -> (index signature, unit, meaning)
    "p": ("unit,day,hour,year", "MW",
          "power output of a thermal or renewable unit in one representative "
          "hour"),
    "q": ("corridor,day,hour,year", "MW",
          "directed flow on a transfer corridor, bounded by its rated "
          "capacity"),
    "pls": ("zone,day,hour,year", "MW",
            "load shed in a zone-hour; charged at the value of lost load"),
    "prm": ("year", "MW",
            "reserve-margin shortfall: how far credited firm capacity falls "
            "below the annual requirement"),
    "c": ("unit,day,hour,year", "MW", "storage charging draw"),
    "dc": ("unit,day,hour,year", "MW", "storage discharging injection"),
    "soc": ("unit,day,hour,year", "MWh",
            "storage state of charge at the end of the hour; hour 0 is the "
            "opening level"),
    "ers": ("technology,year", "MWh",
            "clean-energy target shortfall for one technology, charged at "
            "the target penalty price"),
    "d": ("unit,year", "fraction",
          "investment decision: commit the unit this year (binary for "
          "discrete units, else a fraction of nameplate)"),
    "b": ("unit,year", "fraction",
          "build completion; equals the decision made lead-time years "
          "earlier"),
    "r": ("unit,year", "fraction",
          "retirement; follows the build after the design lifetime, or the "
          "schedule for existing units"),
    "o": ("unit,year", "fraction",
          "operating status: prior status plus builds minus retirements, "
          "kept within [0, 1]"),
    "u": ("material,year", "tonnes",
          "raw material drawn this year for component manufacturing"),
    "v": ("component,year", "units", "components manufactured this year"),
    "w": ("product,technology,year", "MW",
          "product output assembled this year, credited to one technology"),
    "s": ("material,year", "tonnes",
          "material stock carried into the next year"),
    "f": ("pool,zone,year", "km2",
          "land area remaining in a siting pool of a zone"),
    "z": ("state-element", "mixed",
          "incoming state of a yearly stage problem: copies of stock, land, "
          "status and in-flight decisions handed over from the prior year"),
    "alpha": ("year", "$",
              "cost-to-go estimate of all later years, pushed up by "
              "optimality cuts"),
}

ROW_DOCS: dict[str, tuple[str, str]] = {
    # tag -> (index signature, what the row enforces)
    "balance": ("zone,day,hour,year",
                "nodal energy balance (==): generation + storage discharge "
                "+ imports + inflows - outflows - charging + shed equals the "
                "hourly load"),
    "thermal-cap": ("unit,day,hour,year",
                    "dispatch cap (<=): output of a thermal unit at most "
                    "nameplate times operating status"),
    "renew-cap": ("unit,day,hour,year",
                  "dispatch cap (<=): renewable output at most nameplate "
                  "times operating status times the hourly availability "
                  "factor"),
    "reserve": ("year",
                "system adequacy (>=): capacity-credited firm capacity plus "
                "the shortfall slack covers peak load times one plus the "
                "reserve margin"),
    "rps": ("technology,year",
            "clean-energy target (>=): day-weighted annual generation of "
            "the technology plus its shortfall slack covers the target "
            "share of annual load"),
    "mat-cover": ("material,year",
                  "material coverage (<=): tonnes embedded in components "
                  "manufactured this year at most the material drawn"),
    "comp-cover": ("component,year",
                   "component coverage (<=): components embedded in "
                   "products assembled this year at most the components "
                   "manufactured"),
    "prod-cap": ("technology,year",
                 "product coverage (>=): product output of the technology "
                 "covers the nameplate capacity being committed this year"),
    "stock": ("material,year",
              "stock ledger (==): closing stock equals prior stock plus "
              "primary supply minus draw plus material recovered from "
              "retiring units"),
    "field": ("pool,zone,year",
              "land ledger (==): remaining area equals prior area minus "
              "the footprint (nameplate over density) of builds completed "
              "this year"),
    "area-commit": ("pool,zone,year",
                    "land headroom (>=): remaining area covers the "
                    "footprint of builds already committed but not yet "
                    "completed"),
    "lead": ("unit,year",
             "construction delay (==): a build completes exactly lead-time "
             "years after its decision"),
    "retire-life": ("unit,year",
                    "lifetime retirement (==): a candidate retires exactly "
                    "lead-time plus lifetime years after its decision"),
    "status": ("unit,year",
               "status recursion (==): operating status equals prior "
               "status plus this year's build minus this year's "
               "retirement"),
    "spacing": ("unit,year",
                "rebuild spacing (<=): at most one commitment of a unit "
                "within any lifetime-long window, so a site is not "
                "recommitted while a build is still alive"),
    "soc-open": ("unit,day,year",
                 "storage anchor (==): the representative day opens at "
                 "half of energy capacity times operating status"),
    "soc-close": ("unit,day,year",
                  "storage anchor (==): the day closes back at the opening "
                  "level, so representative days are energy-neutral"),
    "soc-bal": ("unit,day,hour,year",
                "storage dynamics (==): state of charge steps by charge "
                "times charge efficiency minus discharge over discharge "
                "efficiency"),
    "chg-cap": ("unit,day,hour,year",
                "charge cap (<=): charging at most nameplate times "
                "operating status"),
    "dis-cap": ("unit,day,hour,year",
                "discharge cap (<=): discharging at most nameplate times "
                "operating status"),
    "soc-cap": ("unit,day,hour,year",
                "energy cap (<=): state of charge at most energy capacity "
                "times operating status"),
    "link": ("state-element",
             "state handover (==): a stage's incoming-state copy is pinned "
             "to the value produced by the previous year; its dual prices "
             "the state for optimality cuts"),
    "cut": ("year,counter",
            "optimality cut (>=): the cost-to-go estimate must lie above a "
            "supporting hyperplane of the next year's value function"),
}


def explain_key(key: str) -> str:
    """Describe a concrete column/row key or a bare family name."""
    name = key.split("[", 1)[0]
    if name in COLUMN_DOCS:
        sig, unit, meaning = COLUMN_DOCS[name]
        head = f"column {name}[{sig}]  ({unit})"
    elif name in ROW_DOCS:
        sig, meaning = ROW_DOCS[name]
        head = f"row {name}[{sig}]"
    else:
        known = ", ".join(sorted(set(COLUMN_DOCS) | set(ROW_DOCS)))
        raise KeyError(f"unknown family {name!r}; known families: {known}")
    if "[" in key and key.endswith("]"):
        indices = key[key.index("[") + 1:-1].split(",")
        names = sig.split(",")
        if len(indices) == len(names):
            pairs = ", ".join(f"{n}={v}" for n, v in zip(names, indices))
            head += f"\n  instance: {pairs}"
    return f"{head}\n  {meaning}"


def list_families() -> str:
    lines = ["columns:"]
    for fam in sorted(COLUMN_DOCS):
        sig, unit, meaning = COLUMN_DOCS[fam]
        lines.append(f"  {fam}[{sig}]  ({unit}): {meaning}")
    lines.append("rows:")
    for tag in sorted(ROW_DOCS):
        sig, meaning = ROW_DOCS[tag]
        lines.append(f"  {tag}[{sig}]: {meaning}")
    return "\n".join(lines)
