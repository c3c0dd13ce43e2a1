"""Plan reports: content correctness, byte stability, comparisons."""

import hashlib
import json
from pathlib import Path

import pytest

from scgep.nbd import NestedBenders
from scgep.oracle import solve_monolithic
from scgep.report import (
    CSV_FILES, PlanReport, compare_runs, format_comparison, format_report,
    plan_from_monolithic, plan_from_nbd, read_report, render_plan_json,
    write_report,
)

from models import mini2z, tiny_storage_cycle, tiny_thermal_binary


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _mono_plan(model):
    return plan_from_monolithic(model, solve_monolithic(model))


def test_report_files_and_cost_identity(tmp_path):
    model = mini2z()
    result = solve_monolithic(model)
    plan = plan_from_monolithic(model, result)
    files = write_report(plan, tmp_path)
    assert sorted(f.name for f in files) == sorted(("plan.json",) + CSV_FILES)

    # the grand-total row of costs.csv re-derives the objective
    lines = (tmp_path / "costs.csv").read_text().splitlines()
    header = lines[0].split(",")
    total_row = lines[-1].split(",")
    assert total_row[0] == "all"
    total = float(total_row[header.index("total")])
    assert total == pytest.approx(result.objective, rel=1e-9)
    # and the per-year rows sum to it
    per_year = sum(float(r.split(",")[header.index("total")])
                   for r in lines[1:-1])
    assert per_year == pytest.approx(total, rel=1e-9)
    assert plan.cost_totals["total"] == pytest.approx(result.objective, rel=1e-6)


def test_fresh_solves_serialize_identically(tmp_path):
    for run in ("a", "b"):
        write_report(_mono_plan(mini2z()), tmp_path / run)
    for name in ("plan.json",) + CSV_FILES:
        assert _digest(tmp_path / "a" / name) == _digest(tmp_path / "b" / name)


def test_round_trip_preserves_bytes(tmp_path):
    plan = _mono_plan(tiny_thermal_binary())
    write_report(plan, tmp_path)
    back = read_report(tmp_path)
    assert render_plan_json(back) == (tmp_path / "plan.json").read_text()
    assert back.objective == plan.objective
    assert back.years == plan.years
    assert back.costs == plan.costs
    assert back.units == plan.units


def test_capacity_rows_cover_every_unit_year(tmp_path):
    model = mini2z()
    plan = _mono_plan(model)
    write_report(plan, tmp_path)
    lines = (tmp_path / "capacity.csv").read_text().splitlines()
    assert len(lines) == 1 + len(model.time.years) * len(model.assets)
    header = lines[0].split(",")
    by_unit_year = {}
    for line in lines[1:]:
        row = dict(zip(header, line.split(",")))
        by_unit_year[(row["unit"], int(row["year"]))] = row
    # the fixture's story: the existing thermal unit drops out in 2028
    assert float(by_unit_year[("E1", 2027)]["status"]) == pytest.approx(1.0)
    assert float(by_unit_year[("E1", 2028)]["status"]) == pytest.approx(0.0)
    assert float(by_unit_year[("E1", 2028)]["retired"]) == pytest.approx(1.0)


def test_reliability_agrees_with_penalty_costs():
    model = mini2z()
    plan = _mono_plan(model)
    voll = model.penalties.voll_per_mwh
    for y in plan.years:
        assert plan.costs[y]["load_shedding_penalty"] == pytest.approx(
            voll * plan.reliability[y]["shed_mwh"], rel=1e-9, abs=1e-6)
    assert plan.reliability[2026]["shed_mwh"] == pytest.approx(0.0, abs=1e-6)
    assert plan.reliability[2028]["shed_mwh"] > 0.0


def test_material_ledger_matches_stock_recursion():
    model = tiny_storage_cycle()
    plan = _mono_plan(model)
    for m, by_year in plan.materials.items():
        prev = model.supply_chain.initial_stock.get(m, 0.0)
        for y in plan.years:
            led = by_year[y]
            assert led["remaining_supply_t"] == pytest.approx(
                led["supply_t"] - led["used_t"], abs=1e-9)
            assert led["stock_t"] >= -1e-9
            assert led["stock_t"] <= prev + led["supply_t"] + 1e-6
            prev = led["stock_t"]


def test_nbd_plan_embeds_iterations_without_wall_time(tmp_path):
    model = tiny_thermal_binary()
    result = NestedBenders(model, epsilon=1e-6).solve()
    plan = plan_from_nbd(model, result)
    assert plan.mode == "nbd"
    assert plan.iterations
    for rec in plan.iterations:
        assert set(rec) == {"iteration", "lower_bound", "upper_bound",
                            "gap", "cuts_added"}
    write_report(plan, tmp_path / "x")
    result2 = NestedBenders(model, epsilon=1e-6).solve()
    write_report(plan_from_nbd(model, result2), tmp_path / "y")
    assert _digest(tmp_path / "x" / "plan.json") == _digest(tmp_path / "y" / "plan.json")


def test_empty_horizon_writes_headers_only(tmp_path):
    empty = PlanReport(name="none", mode="monolithic", status="optimal",
                       objective=0.0, years=(), units={},
                       capacity_by_technology={}, dispatch={}, materials={},
                       fields={}, reliability={}, costs={}, cost_totals={})
    write_report(empty, tmp_path)
    for name in CSV_FILES:
        lines = (tmp_path / name).read_text().splitlines()
        assert len(lines) == 1
        assert "," in lines[0]


def test_schema_version_is_enforced(tmp_path):
    write_report(_mono_plan(tiny_thermal_binary()), tmp_path)
    doc = json.loads((tmp_path / "plan.json").read_text())
    assert doc["schema_version"] == 1
    doc["schema_version"] = 2
    with pytest.raises(ValueError, match="schema version 2"):
        PlanReport.from_dict(doc)


def test_compare_identical_runs_is_all_zero(tmp_path):
    write_report(_mono_plan(mini2z()), tmp_path / "a")
    write_report(_mono_plan(mini2z()), tmp_path / "b")
    cmp_ = compare_runs(tmp_path / "a", tmp_path / "b")
    assert cmp_.max_abs_capacity_delta() == 0.0
    assert cmp_.objective_delta == 0.0
    assert all(v == 0.0 for by in cmp_.cost_delta.values()
               for v in by.values())
    text = format_comparison(cmp_)
    assert "capacity delta" in text


def test_compare_sees_a_single_build_difference(tmp_path):
    base = _mono_plan(mini2z())
    write_report(base, tmp_path / "a")
    bumped = json.loads(render_plan_json(base))
    bumped["capacity_by_technology"]["spv"]["2028"] += 100.0
    (tmp_path / "b").mkdir()
    (tmp_path / "b" / "plan.json").write_text(json.dumps(bumped))
    cmp_ = compare_runs(tmp_path / "a", tmp_path / "b")
    nonzero = {(t, y): v for t, by in cmp_.capacity_delta.items()
               for y, v in by.items() if v != 0.0}
    assert nonzero == {("spv", 2028): 100.0}


def test_compare_rejects_horizon_mismatch(tmp_path):
    write_report(_mono_plan(mini2z()), tmp_path / "a")
    write_report(_mono_plan(tiny_thermal_binary()), tmp_path / "b")
    with pytest.raises(ValueError, match="horizon mismatch"):
        compare_runs(tmp_path / "a", tmp_path / "b")


def test_text_rendering_mentions_the_headline_numbers():
    plan = _mono_plan(mini2z())
    text = format_report(plan)
    assert "mini2z" in text
    assert "operating capacity (MW)" in text
    assert "1,930,085,425.96" in text
    assert plan.model_digest in text
