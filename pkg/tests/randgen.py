"""Seeded random problem generators shared by solver and acceptance tests."""

from __future__ import annotations

import numpy as np

from scgep.milp import SparseProblem

SENSES = ("<=", ">=", "==")


def random_lp_data(rng: np.random.Generator, max_rows: int = 6, max_cols: int = 6):
    """A small box-bounded LP with mixed senses; always has a bounded box.

    Most rows are anchored to a random interior point so a good share of
    instances is feasible; the rest get fully random right-hand sides so
    infeasible instances appear too.
    """
    m = int(rng.integers(1, max_rows + 1))
    n = int(rng.integers(1, max_cols + 1))
    A = np.round(rng.uniform(-3.0, 3.0, (m, n)), 2)
    A[rng.uniform(size=A.shape) < 0.3] = 0.0
    for i in range(m):
        if not A[i].any():
            A[i, int(rng.integers(0, n))] = 1.0
    c = np.round(rng.uniform(-2.0, 2.0, n), 2)
    lb = np.round(rng.uniform(-2.0, 0.5, n), 2)
    ub = lb + np.round(rng.uniform(0.5, 6.0, n), 2)
    x0 = rng.uniform(lb, ub)
    senses = [SENSES[int(k)] for k in rng.integers(0, 3, m)]
    b = np.empty(m)
    for i in range(m):
        if rng.uniform() < 0.7:
            margin = round(float(rng.uniform(0.0, 2.0)), 2)
            at = float(A[i] @ x0)
            if senses[i] == "<=":
                b[i] = round(at + margin, 2)
            elif senses[i] == ">=":
                b[i] = round(at - margin, 2)
            else:
                b[i] = round(at, 4)
        else:
            b[i] = round(float(rng.uniform(-4.0, 6.0)), 2)
    return A, senses, b, lb, ub, c


def to_problem(A, senses, b, lb, ub, c, *, integer=False) -> SparseProblem:
    prob = SparseProblem("random")
    m, n = np.asarray(A).shape
    for j in range(n):
        prob.add_col(f"x{j}", lb=lb[j], ub=ub[j], obj=c[j], integer=integer)
    for i in range(m):
        coefs = [(f"x{j}", A[i][j]) for j in range(n) if A[i][j] != 0.0]
        prob.add_row(f"r{i}", coefs, senses[i], b[i])
    return prob


def random_binary_milp_data(rng: np.random.Generator, max_cols: int = 8):
    """All-binary MILP with integer constraint data for exact enumeration."""
    n = int(rng.integers(2, max_cols + 1))
    m = int(rng.integers(1, 5))
    A = rng.integers(-4, 5, (m, n))
    for i in range(m):
        if not A[i].any():
            A[i, int(rng.integers(0, n))] = 1
    # right-hand sides biased so some assignments are feasible
    b = np.array([int(A[i][A[i] > 0].sum() // 2) if (A[i] > 0).any() else 0
                  for i in range(m)])
    senses = []
    for i in range(m):
        k = int(rng.integers(0, 4))
        if k == 3:
            # equalities are kept satisfiable by construction: pin to the
            # row value of a random assignment
            bits = rng.integers(0, 2, n)
            b[i] = int(A[i] @ bits)
            senses.append("==")
        else:
            senses.append(SENSES[k % 2])
    c = np.round(rng.uniform(-5.0, 5.0, n), 3)
    return A, senses, b, c


def binary_to_problem(A, senses, b, c) -> SparseProblem:
    prob = SparseProblem("random-binary")
    m, n = np.asarray(A).shape
    for j in range(n):
        prob.add_col(f"x{j}", lb=0.0, ub=1.0, obj=float(c[j]), integer=True)
    for i in range(m):
        coefs = [(f"x{j}", float(A[i][j])) for j in range(n) if A[i][j] != 0]
        prob.add_row(f"r{i}", coefs, senses[i], float(b[i]))
    return prob
