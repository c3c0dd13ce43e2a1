"""Brute-force references the solver is judged against.

Two independent checkers:

* ``vertex_enumeration_lp`` — for small box-bounded LPs, enumerate every
  basic point (each choice of n active constraints among rows and bounds),
  keep the feasible ones, and take the best.  No simplex logic shared with
  the solver under test.
* ``enumerate_binary_milp`` — for all-binary problems with integer
  constraint data, try every assignment with exact integer arithmetic.

Plus ``check_dual_certificate`` which verifies sign conventions,
complementary slackness and strong duality of a reported dual vector.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

LE, GE, EQ = "<=", ">=", "=="

_FEAS = 1e-7


def vertex_enumeration_lp(A, senses, b, lb, ub, c):
    """Return (status, objective, x) by enumerating candidate vertices.

    Requires finite lb/ub on every column so the feasible set is a
    polytope; status is "optimal" or "infeasible".
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    lb = np.asarray(lb, dtype=float)
    ub = np.asarray(ub, dtype=float)
    c = np.asarray(c, dtype=float)
    m, n = A.shape
    if not (np.isfinite(lb).all() and np.isfinite(ub).all()):
        raise ValueError("vertex enumeration needs a bounded box")

    # constraint pool: every row as equality, then every bound
    rows = [(A[i], b[i]) for i in range(m)]
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        rows.append((e.copy(), lb[j]))
        rows.append((e.copy(), ub[j]))

    combos = list(itertools.combinations(range(len(rows)), n))
    M = np.empty((len(combos), n, n))
    r = np.empty((len(combos), n))
    for k, combo in enumerate(combos):
        for t, idx in enumerate(combo):
            M[k, t, :] = rows[idx][0]
            r[k, t] = rows[idx][1]

    # solve the nonsingular systems in one batched call
    dets = np.abs(np.linalg.det(M))
    scale = np.prod(np.linalg.norm(M, axis=2) + 1e-30, axis=1)
    keep = dets > 1e-10 * scale
    X = np.full((len(combos), n), np.nan)
    if keep.any():
        X[keep] = np.linalg.solve(M[keep], r[keep][..., None])[..., 0]

    best_obj = math.inf
    best_x = None
    ftol = _FEAS * (1.0 + float(np.abs(b).max(initial=0.0)) +
                    float(np.abs(ub).max(initial=0.0)))
    for k in range(len(combos)):
        if not keep[k]:
            continue
        x = X[k]
        if not np.isfinite(x).all():
            continue
        if (x < lb - ftol).any() or (x > ub + ftol).any():
            continue
        Ax = A @ x
        ok = True
        for i in range(m):
            g = Ax[i] - b[i]
            if senses[i] == LE and g > ftol:
                ok = False
            elif senses[i] == GE and g < -ftol:
                ok = False
            elif senses[i] == EQ and abs(g) > ftol:
                ok = False
            if not ok:
                break
        if not ok:
            continue
        obj = float(c @ x)
        if obj < best_obj - 1e-12:
            best_obj = obj
            best_x = x.copy()
    if best_x is None:
        return "infeasible", None, None
    return "optimal", best_obj, best_x


def enumerate_binary_milp(A, senses, b, c):
    """Exact best assignment of binary columns; A, b must be integer-valued."""
    A = [[int(v) for v in row] for row in np.asarray(A)]
    b = [int(v) for v in np.asarray(b)]
    n = len(A[0]) if A else len(c)
    best_obj = None
    best_x = None
    for bits in itertools.product((0, 1), repeat=n):
        ok = True
        for row, sense, rhs in zip(A, senses, b):
            lhs = sum(a * x for a, x in zip(row, bits))
            if sense == LE and lhs > rhs:
                ok = False
            elif sense == GE and lhs < rhs:
                ok = False
            elif sense == EQ and lhs != rhs:
                ok = False
            if not ok:
                break
        if not ok:
            continue
        obj = sum(ci * x for ci, x in zip(c, bits))
        if best_obj is None or obj < best_obj:
            best_obj = obj
            best_x = bits
    return best_obj, best_x


def check_dual_certificate(A, senses, b, lb, ub, c, x, y, *, tol=1e-6):
    """Assert-style check of an optimal primal/dual pair; returns messages."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    c = np.asarray(c, dtype=float)
    lb = np.asarray(lb, dtype=float)
    ub = np.asarray(ub, dtype=float)
    problems = []

    # dual sign convention: shadow prices of a minimization
    for i, s in enumerate(senses):
        if s == LE and y[i] > tol:
            problems.append(f"row {i}: positive dual on a <= row")
        if s == GE and y[i] < -tol:
            problems.append(f"row {i}: negative dual on a >= row")

    # complementary slackness
    Ax = A @ x if len(b) else np.zeros(0)
    for i, s in enumerate(senses):
        if s != EQ and abs(y[i]) > tol and abs(Ax[i] - b[i]) > tol * (1 + abs(b[i])):
            problems.append(f"row {i}: nonzero dual on a slack row")

    # reduced costs pin columns to the right bound
    d = c - (y @ A if len(b) else 0.0)
    for j in range(len(c)):
        if d[j] > tol and abs(x[j] - lb[j]) > tol * (1 + abs(lb[j])):
            problems.append(f"col {j}: positive reduced cost but not at lower bound")
        if d[j] < -tol and abs(x[j] - ub[j]) > tol * (1 + abs(ub[j])):
            problems.append(f"col {j}: negative reduced cost but not at upper bound")

    # strong duality with bound multipliers split from the reduced costs
    dual_obj = float(y @ b) if len(b) else 0.0
    for j in range(len(c)):
        if d[j] > 0:
            dual_obj += d[j] * lb[j]
        elif d[j] < 0:
            dual_obj += d[j] * ub[j]
    primal_obj = float(c @ x)
    scale = 1.0 + abs(primal_obj)
    if abs(primal_obj - dual_obj) > 1e-8 * scale + 1e-8:
        problems.append(f"duality gap {primal_obj} vs {dual_obj}")
    return problems


def check_farkas_certificate(A, senses, b, lb, ub, y, *, ztol=1e-9):
    """Value of the infeasibility proof; > 0 means the proof is valid."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    y = np.asarray(y, dtype=float)
    for i, s in enumerate(senses):
        if s == LE and y[i] > ztol:
            return -math.inf
        if s == GE and y[i] < -ztol:
            return -math.inf
    total = float(y @ b)
    coef = y @ A
    for j in range(A.shape[1]):
        a = coef[j]
        if abs(a) <= ztol:
            continue
        # add min over the box of (-a) * x_j
        if -a > 0:
            term = -a * lb[j]
        else:
            term = -a * ub[j]
        if not math.isfinite(term):
            return -math.inf
        total += term
    return total
