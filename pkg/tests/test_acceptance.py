"""Acceptance gate: the eight package-level criteria, one test each.

Every criterion is checked against an independent reference (vertex or
exhaustive enumeration, re-derived ledgers, byte digests) at its stated
tolerance and, where stated, its runtime budget.
"""

import hashlib
import json
import time

import numpy as np
import pytest

from scgep.cli import main as cli_main
from scgep.formulation import build_monolithic
from scgep.ingest import WITHOUT_SC, apply_scenario
from scgep.keys import variable_key as vk
from scgep.milp import solve_lp, solve_milp
from scgep.nbd import CONVERGED, NestedBenders
from scgep.oracle import enumerate_tiny, solve_monolithic
from scgep.report import verify_plan_invariants

from lp_reference import (
    check_dual_certificate, enumerate_binary_milp, vertex_enumeration_lp,
)
from models import ALL_TINY, tiny_leadtime_shock
from randgen import (
    binary_to_problem, random_binary_milp_data, random_lp_data, to_problem,
)
from test_ingest import FIXTURE, _write_cluster_dataset


def _is_continuous(model) -> bool:
    return build_monolithic(model).n_integer == 0


def _total(values, prefix: str) -> float:
    return sum(v for k, v in values.items() if k.startswith(prefix))


# ---------------------------------------------------------------------------
# 1. LP kernel vs vertex enumeration + strong duality, 200 cases in < 5 s

def test_criterion_1_lp_kernel_against_vertex_enumeration():
    rng = np.random.default_rng(20260401)
    t0 = time.perf_counter()
    n_optimal = 0
    for case in range(200):
        A, senses, b, lb, ub, c = random_lp_data(rng)
        res = solve_lp(to_problem(A, senses, b, lb, ub, c))
        status, obj, _ = vertex_enumeration_lp(A, senses, b, lb, ub, c)
        assert res.status == status, f"case {case}: {res.status} vs {status}"
        if status != "optimal":
            continue
        n_optimal += 1
        assert res.objective == pytest.approx(obj, abs=1e-8 * (1 + abs(obj))), \
            f"case {case}"
        x = [res.values[f"x{j}"] for j in range(len(c))]
        y = [res.duals.get(f"r{i}", 0.0) for i in range(len(b))]
        problems = check_dual_certificate(A, senses, b, lb, ub, c, x, y)
        assert not problems, f"case {case}: {problems}"
    elapsed = time.perf_counter() - t0
    assert n_optimal >= 100
    assert elapsed < 5.0, f"took {elapsed:.2f}s"


# ---------------------------------------------------------------------------
# 2. MILP kernel vs exact binary enumeration, 50 cases in < 10 s

def test_criterion_2_milp_kernel_against_enumeration():
    rng = np.random.default_rng(20260402)
    t0 = time.perf_counter()
    n_optimal = 0
    for case in range(50):
        A, senses, b, c = random_binary_milp_data(rng)
        res = solve_milp(binary_to_problem(A, senses, b, c))
        best_obj, _ = enumerate_binary_milp(A, senses, b, c)
        if best_obj is None:
            assert res.status == "infeasible", f"case {case}: {res.status}"
            continue
        n_optimal += 1
        assert res.status == "optimal", f"case {case}: {res.status}"
        assert res.objective == pytest.approx(best_obj, abs=1e-9 * (1 + abs(best_obj))), \
            f"case {case}"
    elapsed = time.perf_counter() - t0
    assert n_optimal >= 25
    assert elapsed < 10.0, f"took {elapsed:.2f}s"


# ---------------------------------------------------------------------------
# 3. three-way optimum agreement on the authored fixtures in < 60 s

def test_criterion_3_three_way_agreement_on_fixtures():
    assert len(ALL_TINY) >= 5
    assert "mini2z" in ALL_TINY
    t0 = time.perf_counter()
    for name, factory in ALL_TINY.items():
        model = factory()
        mono = solve_monolithic(model)
        enum = enumerate_tiny(model)
        nbd = NestedBenders(model, epsilon=1e-6).solve()
        assert mono.status == "optimal", name
        assert enum.status == "optimal", name
        scale = max(1.0, abs(enum.objective))
        assert abs(mono.objective - enum.objective) <= 1e-6 * scale, name
        if _is_continuous(model):
            assert nbd.status == CONVERGED, name
            assert abs(nbd.objective - enum.objective) <= 1e-4 * scale, name
        else:
            # discrete fixtures: the incumbent must be within the gap the
            # decomposition itself reports
            reported = nbd.gap if np.isfinite(nbd.gap) else 0.0
            tol = max(1e-6, reported) * scale
            assert abs(nbd.objective - enum.objective) <= tol, name
            assert nbd.objective >= enum.objective - 1e-6 * scale, name
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"took {elapsed:.2f}s"


# ---------------------------------------------------------------------------
# 4. decomposition convergence behavior

def test_criterion_4_bounds_monotone_and_gap_closed():
    checked = 0
    for name, factory in ALL_TINY.items():
        model = factory()
        result = NestedBenders(model, epsilon=1e-6, max_iterations=50).solve()
        prev_lb = -np.inf
        for rec in result.iterations:
            assert rec.lower_bound >= prev_lb - 1e-9, name
            prev_lb = rec.lower_bound
            scale = max(1.0, abs(rec.upper_bound))
            assert rec.upper_bound >= rec.lower_bound - 1e-9 * scale, name
        if _is_continuous(model):
            checked += 1
            assert result.status == CONVERGED, name
            assert result.gap <= 1e-6, name
            assert result.n_iterations <= 50, name
    assert checked >= 3


# ---------------------------------------------------------------------------
# 5. conservation invariants on every solved plan, 1e-6 absolute

def test_criterion_5_invariants_on_every_solved_plan():
    for name, factory in ALL_TINY.items():
        model = factory()
        for label, values in (
                ("monolithic", solve_monolithic(model).values),
                ("nbd", NestedBenders(model, epsilon=1e-6).solve().values)):
            problems = verify_plan_invariants(model, values, tol=1e-6)
            assert not problems, f"{name}/{label}: {problems[:5]}"


# ---------------------------------------------------------------------------
# 6. qualitative claims at desk scale

def test_criterion_6a_relaxing_the_chain_never_hurts():
    for name, factory in ALL_TINY.items():
        base_model = factory()
        free_model = apply_scenario(base_model, WITHOUT_SC)
        base = solve_monolithic(base_model)
        free = solve_monolithic(free_model)
        assert base.status == free.status == "optimal", name
        scale = max(1.0, abs(base.objective))
        assert free.objective <= base.objective + 1e-6 * scale, name
        assert _total(free.values, "pls[") <= _total(base.values, "pls[") + 1e-6, name
        assert _total(free.values, "prm[") <= _total(base.values, "prm[") + 1e-6, name


def test_criterion_6b_lead_time_causes_interim_shortfall():
    slow = solve_monolithic(tiny_leadtime_shock(3))
    fast = solve_monolithic(tiny_leadtime_shock(0))
    years = tiny_leadtime_shock(3).time.years
    slow_prm = {y: slow.values.get(vk("reserve-shortfall", y), 0.0) for y in years}
    fast_prm = {y: fast.values.get(vk("reserve-shortfall", y), 0.0) for y in years}
    # the retirement bites before the 3-year build can arrive ...
    interim = [y for y, v in slow_prm.items() if v > 1.0]
    assert interim, slow_prm
    assert max(interim) < years[-1], "shortfall should be interim, not terminal"
    # ... and disappears entirely when construction is instantaneous
    assert all(v <= 1e-6 for v in fast_prm.values()), fast_prm
    assert _total(fast.values, "pls[") <= 1e-6
    assert fast.objective < slow.objective


# ---------------------------------------------------------------------------
# 7. byte-identical plan.json across repeat runs

def _solve_digest(manifest, out_dir) -> str:
    assert cli_main(["solve", "--config", str(manifest), "--mode", "nbd",
                     "--out", str(out_dir)]) == 0
    return hashlib.sha256((out_dir / "plan.json").read_bytes()).hexdigest()


def test_criterion_7_plan_digests_are_reproducible(tmp_path, monkeypatch):
    monkeypatch.setenv("SCGEP_SEED", "0")
    a = _solve_digest(FIXTURE / "manifest.json", tmp_path / "a")
    b = _solve_digest(FIXTURE / "manifest.json", tmp_path / "b")
    assert a == b

    # the clustered-ingest path is seed-sensitive, so pin it and repeat
    root = _write_cluster_dataset(tmp_path)
    c = _solve_digest(root / "manifest.json", tmp_path / "c")
    d = _solve_digest(root / "manifest.json", tmp_path / "d")
    assert c == d
    assert a != c  # different datasets, different plans


# ---------------------------------------------------------------------------
# 8. CLI exit-code contract

def test_criterion_8_cli_exit_codes(tmp_path, capsys):
    manifest = str(FIXTURE / "manifest.json")
    # 0: success
    assert cli_main(["validate", manifest]) == 0
    # 1: validation failure
    broken = tmp_path / "broken"
    import shutil
    shutil.copytree(FIXTURE, broken)
    doc = json.loads((broken / "assets.json").read_text())
    doc["assets"][0]["zone"] = "nowhere"
    (broken / "assets.json").write_text(json.dumps(doc))
    assert cli_main(["validate", str(broken / "manifest.json")]) == 1
    # 2: solver non-convergence
    assert cli_main(["solve", "--config", manifest, "--mode", "nbd",
                     "--max-iters", "0", "--out", str(tmp_path / "o")]) == 2
    # 3: I/O failure
    assert cli_main(["validate", str(tmp_path / "missing.json")]) == 3
    capsys.readouterr()
