"""The inter-year state vector shared by all problem builders.

A year hands four kinds of information to its successor:

* ``stock:<material>``   — closing material stock (tonnes),
* ``field:<pool>:<zone>`` — remaining buildable area (km^2),
* ``status:<unit>``      — operating status at year end,
* ``dlag:<unit>:<j>``    — the build decision taken ``j`` years ago
  (j = 1 is the year just ended), kept deep enough to cover lead time
  plus lifetime so later years can place completions and retirements.

Stage problems duplicate each element as a ``z`` column pinned by an
equality row; the monolithic problem resolves the same references to the
previous year's real columns, so both builders emit structurally
identical constraint rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..model import GeneratorAsset, SystemModel


@dataclass(frozen=True)
class StateElement:
    key: str
    kind: str                      # stock | field | status | dlag
    material: Optional[str] = None
    pool: Optional[str] = None
    zone: Optional[str] = None
    unit: Optional[str] = None
    lag: int = 0


def stock_key(material: str) -> str:
    return f"stock:{material}"


def field_key(pool: str, zone: str) -> str:
    return f"field:{pool}:{zone}"


def status_key(unit: str) -> str:
    return f"status:{unit}"


def dlag_key(unit: str, lag: int) -> str:
    return f"dlag:{unit}:{lag}"


def max_lag(model: SystemModel, g: GeneratorAsset) -> int:
    """Deepest decision lag a successor year can ever need to read."""
    if g.existing:
        return 0
    span = (g.lead_time_years or 0) + (g.lifetime_years or 1)
    return min(span, len(model.time.years) - 1)


def state_elements(model: SystemModel) -> list[StateElement]:
    out: list[StateElement] = []
    for m in model.catalog.materials:
        out.append(StateElement(stock_key(m), "stock", material=m))
    for pool, zone in model.field_pools():
        out.append(StateElement(field_key(pool, zone), "field",
                                pool=pool, zone=zone))
    for g in model.assets:
        out.append(StateElement(status_key(g.id), "status", unit=g.id))
    for g in model.candidates():
        for j in range(1, max_lag(model, g) + 1):
            out.append(StateElement(dlag_key(g.id, j), "dlag",
                                    unit=g.id, lag=j))
    return out


def initial_state(model: SystemModel) -> dict[str, float]:
    """State entering the first planning year."""
    m0: dict[str, float] = {}
    for m in model.catalog.materials:
        m0[stock_key(m)] = model.supply_chain.initial_stock.get(m, 0.0)
    for pool, zone in model.field_pools():
        m0[field_key(pool, zone)] = model.supply_chain.area(zone, pool)
    for g in model.assets:
        m0[status_key(g.id)] = 1.0 if g.existing else 0.0
    for g in model.candidates():
        for j in range(1, max_lag(model, g) + 1):
            m0[dlag_key(g.id, j)] = 0.0
    return m0
