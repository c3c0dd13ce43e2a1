"""Canonical names for optimization columns and rows.

Every variable in every problem built by this package is addressed by a
string key ``<family>[<index>,<index>,...]``.  The same unit/day/hour/year
indices produce the same key in the monolithic problem, in per-year stage
problems and in reports, which is what lets solutions from different code
paths be compared field by field.
"""

from __future__ import annotations

_FAMILIES: dict[str, tuple[str, int]] = {
    # kind -> (family prefix, index arity)
    "gen-output": ("p", 4),            # unit, day, hour, year
    "flow": ("q", 4),                  # corridor, day, hour, year
    "load-shed": ("pls", 4),           # zone, day, hour, year
    "reserve-shortfall": ("prm", 1),   # year
    "charge": ("c", 4),                # unit, day, hour, year
    "discharge": ("dc", 4),            # unit, day, hour, year
    "soc": ("soc", 4),                 # unit, day, hour(0..H), year
    "rps-shortfall": ("ers", 2),       # tech, year
    "decision": ("d", 2),              # unit, year
    "build": ("b", 2),                 # unit, year
    "retire": ("r", 2),                # unit, year
    "status": ("o", 2),                # unit, year
    "material-use": ("u", 2),          # material, year
    "component-make": ("v", 2),        # component, year
    "product-make": ("w", 3),          # product, tech, year
    "stock": ("s", 2),                 # material, year
    "field": ("f", 3),                 # pool, zone, year
    # decomposition bookkeeping
    "state-in": ("z", 1),              # state element
    "cost-to-go": ("alpha", 1),        # year
}

_PREFIX_TO_KIND = {fam: kind for kind, (fam, _) in _FAMILIES.items()}


def variable_key(kind: str, *indices) -> str:
    """Build the canonical key for one variable of the given kind."""
    try:
        fam, arity = _FAMILIES[kind]
    except KeyError:
        raise KeyError(f"unknown variable kind {kind!r}") from None
    if len(indices) != arity:
        raise ValueError(f"kind {kind!r} takes {arity} indices, got {len(indices)}")
    return f"{fam}[{','.join(str(i) for i in indices)}]"


def parse_key(key: str) -> tuple[str, tuple[str, ...]]:
    """Invert ``variable_key``: return (kind, indices as strings)."""
    open_ = key.find("[")
    if open_ < 0 or not key.endswith("]"):
        raise ValueError(f"malformed variable key {key!r}")
    fam = key[:open_]
    kind = _PREFIX_TO_KIND.get(fam)
    if kind is None:
        raise ValueError(f"unknown family prefix {fam!r} in key {key!r}")
    body = key[open_ + 1:-1]
    indices = tuple(body.split(",")) if body else ()
    _, arity = _FAMILIES[kind]
    if len(indices) != arity:
        raise ValueError(f"key {key!r} has {len(indices)} indices, expected {arity}")
    return kind, indices


def family_of(key: str) -> str:
    """The family prefix of a key, e.g. 'p' for 'p[U1,d1,5,2026]'."""
    open_ = key.find("[")
    if open_ < 0:
        raise ValueError(f"malformed variable key {key!r}")
    return key[:open_]


def known_kinds() -> list[str]:
    return sorted(_FAMILIES)


# row keys follow the same shape but live in a separate namespace; a helper
# keeps construction uniform without policing arity (rows are more ad hoc)
def row_key(tag: str, *indices) -> str:
    if indices:
        return f"{tag}[{','.join(str(i) for i in indices)}]"
    return tag
