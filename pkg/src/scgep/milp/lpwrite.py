"""Write a :class:`SparseProblem` as CPLEX-style LP text for inspection.

Output is deterministic (insertion order) so files diff cleanly between
runs; round-tripping is not a goal, readability under `less` is.
"""

from __future__ import annotations

import math

from .problem import EQ, GE, LE, SparseProblem

_SENSE_TXT = {LE: "<=", GE: ">=", EQ: "="}


def _term(coef: float, name: str, first: bool) -> str:
    sign = "-" if coef < 0 else ("" if first else "+")
    mag = abs(coef)
    body = name if mag == 1.0 else f"{mag:.12g} {name}"
    return f"{sign} {body}" if not first else f"{sign}{body}"


def _expr(coefs) -> str:
    parts = []
    for k, (name, coef) in enumerate(coefs):
        parts.append(_term(coef, name, first=(k == 0)))
    return " ".join(parts) if parts else "0 __zero__"


def write_lp(problem: SparseProblem) -> str:
    lines = [f"\\ {problem.name}", "Minimize", " obj:"]
    obj_terms = [(n, problem.obj_coef(n)) for n in problem.col_names()
                 if problem.obj_coef(n) != 0.0]
    lines.append("  " + _expr(obj_terms))
    if problem.objective_offset:
        lines.append(f"\\ constant offset {problem.objective_offset:.12g}")
    lines.append("Subject To")
    for rname in problem.row_names():
        coefs, sense, rhs = problem.row(rname)
        lines.append(f" {rname}: {_expr(coefs)} {_SENSE_TXT[sense]} {rhs:.12g}")
    lines.append("Bounds")
    for cname in problem.col_names():
        lb, ub = problem.bounds(cname)
        if lb == 0.0 and math.isinf(ub):
            continue
        lo = "-inf" if math.isinf(lb) else f"{lb:.12g}"
        hi = "+inf" if math.isinf(ub) else f"{ub:.12g}"
        if lb == ub:
            lines.append(f" {cname} = {lo}")
        else:
            lines.append(f" {lo} <= {cname} <= {hi}")
    integers = problem.integer_cols()
    if integers:
        lines.append("General")
        lines.append("  " + " ".join(integers))
    lines.append("End")
    return "\n".join(lines) + "\n"


def write_lp_file(problem: SparseProblem, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_lp(problem))
