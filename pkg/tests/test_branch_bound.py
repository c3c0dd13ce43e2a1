"""Branch-and-bound behavior against exhaustive binary enumeration."""

import numpy as np
import pytest

from lp_reference import enumerate_binary_milp
from randgen import binary_to_problem, random_binary_milp_data
from scgep.milp import (
    INFEASIBLE, ITERATION_LIMIT, OPTIMAL,
    SolverOptions, SparseProblem, solve_milp,
)


def test_knapsack_picks_integer_solution():
    prob = SparseProblem()
    prob.add_col("a", 0.0, 1.0, obj=-10.0, integer=True)
    prob.add_col("b", 0.0, 1.0, obj=-6.0, integer=True)
    prob.add_col("c", 0.0, 1.0, obj=-4.0, integer=True)
    prob.add_row("weight", [("a", 5.0), ("b", 4.0), ("c", 3.0)], "<=", 8.0)
    res = solve_milp(prob)
    assert res.status == OPTIMAL
    assert res.objective == pytest.approx(-14.0, abs=1e-9)
    assert res.values["a"] == pytest.approx(1.0)
    assert res.values["c"] == pytest.approx(1.0)


def test_pure_lp_passthrough():
    prob = SparseProblem()
    prob.add_col("x", 0.0, 2.0, obj=-1.0)
    prob.add_row("cap", [("x", 1.0)], "<=", 1.5)
    res = solve_milp(prob)
    assert res.status == OPTIMAL
    assert res.objective == pytest.approx(-1.5)


def test_general_integer_column():
    prob = SparseProblem()
    prob.add_col("n", 0.0, 10.0, obj=-1.0, integer=True)
    prob.add_row("cap", [("n", 1.0)], "<=", 7.3)
    res = solve_milp(prob)
    assert res.status == OPTIMAL
    assert res.values["n"] == pytest.approx(7.0)


def test_integer_infeasible_gap():
    # LP relaxation feasible, no integer point: 0.2 <= x <= 0.8
    prob = SparseProblem()
    prob.add_col("x", 0.0, 1.0, obj=1.0, integer=True)
    prob.add_row("lo", [("x", 1.0)], ">=", 0.2)
    prob.add_row("hi", [("x", 1.0)], "<=", 0.8)
    res = solve_milp(prob)
    assert res.status == INFEASIBLE


def test_mixed_continuous_and_integer():
    prob = SparseProblem()
    prob.add_col("build", 0.0, 1.0, obj=10.0, integer=True)
    prob.add_col("out", 0.0, 8.0, obj=-3.0)
    prob.add_row("link", [("out", 1.0), ("build", -5.0)], "<=", 0.0)
    res = solve_milp(prob)
    assert res.status == OPTIMAL
    assert res.objective == pytest.approx(-5.0)
    assert res.values["build"] == pytest.approx(1.0)
    assert res.values["out"] == pytest.approx(5.0)
    # duals come from the LP with the integer decision pinned
    assert res.duals["link"] == pytest.approx(-3.0)


def test_node_limit_reports_limit_status():
    rng = np.random.default_rng(5)
    A, senses, b, c = random_binary_milp_data(rng, max_cols=8)
    prob = binary_to_problem(A, senses, b, c)
    res = solve_milp(prob, SolverOptions(max_nodes=1))
    assert res.status in (OPTIMAL, INFEASIBLE, ITERATION_LIMIT)


def test_best_bound_brackets_objective():
    rng = np.random.default_rng(99)
    for _ in range(10):
        A, senses, b, c = random_binary_milp_data(rng)
        res = solve_milp(binary_to_problem(A, senses, b, c))
        if res.status == OPTIMAL:
            assert res.best_bound is not None
            assert res.best_bound <= res.objective + 1e-9


def test_random_binaries_match_enumeration():
    rng = np.random.default_rng(4242)
    matched = 0
    infeasible = 0
    for _ in range(40):
        A, senses, b, c = random_binary_milp_data(rng)
        best_obj, best_x = enumerate_binary_milp(A, senses, b, c)
        res = solve_milp(binary_to_problem(A, senses, b, c))
        if best_obj is None:
            assert res.status == INFEASIBLE
            infeasible += 1
        else:
            assert res.status == OPTIMAL
            assert res.objective == pytest.approx(best_obj, abs=1e-7)
            matched += 1
    assert matched >= 25


def test_deterministic_repeat():
    rng = np.random.default_rng(8)
    A, senses, b, c = random_binary_milp_data(rng)
    r1 = solve_milp(binary_to_problem(A, senses, b, c))
    r2 = solve_milp(binary_to_problem(A, senses, b, c))
    assert r1.status == r2.status
    assert r1.values == r2.values
    assert r1.nodes == r2.nodes
