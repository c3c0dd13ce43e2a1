"""Problem container shared by the simplex and branch-and-bound layers.

Columns and rows are addressed by string keys (see :mod:`scgep.keys`);
the numeric kernel works on positional arrays derived from insertion
order, which is therefore part of the problem's identity: two problems
built by the same code path in the same order are structurally identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

LE = "<="
GE = ">="
EQ = "=="
_SENSES = (LE, GE, EQ)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration-limit"

INF = float("inf")


@dataclass
class SolverOptions:
    feas_tol: float = 1e-9
    opt_tol: float = 1e-9
    max_pivots: int = 200_000
    refactor_every: int = 100
    deterministic_pivot: bool = False   # True: Bland's rule throughout
    # branch and bound
    int_tol: float = 1e-6
    mip_rel_gap: float = 1e-4
    mip_abs_gap: float = 1e-9
    max_nodes: int = 200_000


@dataclass
class SolveResult:
    status: str
    objective: Optional[float] = None
    values: dict[str, float] = field(default_factory=dict)
    duals: dict[str, float] = field(default_factory=dict)
    reduced_costs: dict[str, float] = field(default_factory=dict)
    pivots: int = 0
    nodes: int = 0
    best_bound: Optional[float] = None
    # infeasibility / unboundedness certificates in row/column key space
    farkas: dict[str, float] = field(default_factory=dict)
    ray: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


class SparseProblem:
    """A minimization problem over bounded continuous/integer columns.

    Rows are linear constraints ``sum(coef * col) (<=|>=|==) rhs``.
    Duplicate coefficient entries for the same (row, column) pair sum.
    """

    def __init__(self, name: str = "problem"):
        self.name = name
        self._col_index: dict[str, int] = {}
        self._col_names: list[str] = []
        self._lb: list[float] = []
        self._ub: list[float] = []
        self._obj: list[float] = []
        self._integer: list[bool] = []
        self._row_index: dict[str, int] = {}
        self._row_names: list[str] = []
        self._sense: list[str] = []
        self._rhs: list[float] = []
        self._entries: list[dict[int, float]] = []   # per-row {col -> coef}
        self.objective_offset: float = 0.0

    # -- columns ----------------------------------------------------------
    def add_col(self, name: str, lb: float = 0.0, ub: float = INF,
                obj: float = 0.0, integer: bool = False) -> int:
        if name in self._col_index:
            raise ValueError(f"duplicate column {name!r}")
        if lb > ub:
            raise ValueError(f"column {name!r} has lb {lb} > ub {ub}")
        j = len(self._col_names)
        self._col_index[name] = j
        self._col_names.append(name)
        self._lb.append(float(lb))
        self._ub.append(float(ub))
        self._obj.append(float(obj))
        self._integer.append(bool(integer))
        return j

    def has_col(self, name: str) -> bool:
        return name in self._col_index

    def col_names(self) -> list[str]:
        return list(self._col_names)

    def set_obj(self, name: str, coef: float) -> None:
        self._obj[self._col_index[name]] = float(coef)

    def add_to_obj(self, name: str, coef: float) -> None:
        self._obj[self._col_index[name]] += float(coef)

    def set_bounds(self, name: str, lb: float, ub: float) -> None:
        if lb > ub:
            raise ValueError(f"column {name!r} has lb {lb} > ub {ub}")
        j = self._col_index[name]
        self._lb[j] = float(lb)
        self._ub[j] = float(ub)

    def bounds(self, name: str) -> tuple[float, float]:
        j = self._col_index[name]
        return self._lb[j], self._ub[j]

    def obj_coef(self, name: str) -> float:
        return self._obj[self._col_index[name]]

    def is_integer(self, name: str) -> bool:
        return self._integer[self._col_index[name]]

    # -- rows -------------------------------------------------------------
    def add_row(self, name: str, coefs: Iterable[tuple[str, float]],
                sense: str, rhs: float) -> int:
        if name in self._row_index:
            raise ValueError(f"duplicate row {name!r}")
        if sense not in _SENSES:
            raise ValueError(f"row {name!r} has unknown sense {sense!r}")
        entries: dict[int, float] = {}
        for col, coef in coefs:
            j = self._col_index.get(col)
            if j is None:
                raise KeyError(f"row {name!r} references unknown column {col!r}")
            if coef != 0.0:
                entries[j] = entries.get(j, 0.0) + float(coef)
        i = len(self._row_names)
        self._row_index[name] = i
        self._row_names.append(name)
        self._sense.append(sense)
        self._rhs.append(float(rhs))
        self._entries.append(entries)
        return i

    def has_row(self, name: str) -> bool:
        return name in self._row_index

    def row_names(self) -> list[str]:
        return list(self._row_names)

    def row(self, name: str) -> tuple[list[tuple[str, float]], str, float]:
        i = self._row_index[name]
        coefs = [(self._col_names[j], v) for j, v in sorted(self._entries[i].items())]
        return coefs, self._sense[i], self._rhs[i]

    def set_rhs(self, name: str, rhs: float) -> None:
        self._rhs[self._row_index[name]] = float(rhs)

    # -- shape ------------------------------------------------------------
    @property
    def n_cols(self) -> int:
        return len(self._col_names)

    @property
    def n_rows(self) -> int:
        return len(self._row_names)

    @property
    def n_integer(self) -> int:
        return sum(self._integer)

    def integer_cols(self) -> list[str]:
        return [n for n, f in zip(self._col_names, self._integer) if f]

    # -- dense/array views for the kernel ---------------------------------
    def arrays(self):
        """(A, sense, rhs, lb, ub, obj, integer) as numpy arrays.

        A is dense (n_rows, n_cols); fine at the scale this kernel targets.
        """
        m, n = self.n_rows, self.n_cols
        A = np.zeros((m, n))
        for i, entries in enumerate(self._entries):
            for j, v in entries.items():
                A[i, j] = v
        sense = np.array(self._sense, dtype=object)
        rhs = np.array(self._rhs, dtype=float)
        lb = np.array(self._lb, dtype=float)
        ub = np.array(self._ub, dtype=float)
        obj = np.array(self._obj, dtype=float)
        integer = np.array(self._integer, dtype=bool)
        return A, sense, rhs, lb, ub, obj, integer

    def copy(self) -> "SparseProblem":
        other = SparseProblem(self.name)
        other._col_index = dict(self._col_index)
        other._col_names = list(self._col_names)
        other._lb = list(self._lb)
        other._ub = list(self._ub)
        other._obj = list(self._obj)
        other._integer = list(self._integer)
        other._row_index = dict(self._row_index)
        other._row_names = list(self._row_names)
        other._sense = list(self._sense)
        other._rhs = list(self._rhs)
        other._entries = [dict(e) for e in self._entries]
        other.objective_offset = self.objective_offset
        return other

    def eval_row(self, name: str, values: dict[str, float]) -> float:
        i = self._row_index[name]
        return sum(v * values.get(self._col_names[j], 0.0)
                   for j, v in self._entries[i].items())

    def eval_objective(self, values: dict[str, float]) -> float:
        return self.objective_offset + sum(
            c * values.get(n, 0.0) for n, c in zip(self._col_names, self._obj))
