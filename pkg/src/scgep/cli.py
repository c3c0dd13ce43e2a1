"""Command-line front end.

Subcommands:

* ``validate``  — load a dataset, print its digest and validation findings
* ``solve``     — solve a dataset and write a plan report directory
* ``report``    — render a written report (or a delta against another run)
* ``explain``   — describe column/row families found in plans and LP dumps

Exit codes: 0 success; 1 validation or usage problem; 2 solver did not
converge; 3 file or serialization problem.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .formulation import explain_key, list_families
from .ingest import (
    BASELINE, SCENARIOS, DatasetValidationError, LoadError, apply_scenario,
    load_dataset,
)
from .milp import SolverOptions
from .model import model_digest, validate
from .nbd import CONVERGED, NestedBenders
from .oracle import solve_monolithic
from .report import (
    compare_runs, format_comparison, format_report, plan_from_monolithic,
    plan_from_nbd, read_report, write_report,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NO_CONVERGENCE = 2
EXIT_IO = 3


def _err(msg: str) -> None:
    print(f"scgep: {msg}", file=sys.stderr)


def _load(config: str):
    """Model from a manifest path, with errors mapped to exit codes."""
    try:
        return load_dataset(config), None
    except DatasetValidationError as e:
        _err(str(e))
        return None, EXIT_INVALID
    except LoadError as e:
        _err(str(e))
        return None, EXIT_IO


# ---------------------------------------------------------------------------
# subcommands

def _cmd_validate(args) -> int:
    model, code = _load(args.config)
    if model is None:
        return code
    report = validate(model)
    print(f"digest: {model_digest(model)}")
    print(f"zones: {len(model.topology.zones)}  units: {len(model.assets)}  "
          f"years: {model.time.years[0]}..{model.time.years[-1]}  "
          f"days: {len(model.time.days)}x{model.time.hours}h")
    for f in report.findings:
        print(f"  [{f.severity}] {f.code}: {f.message}")
    print("ok" if report.ok else "invalid")
    return EXIT_OK if report.ok else EXIT_INVALID


def _cmd_solve(args) -> int:
    model, code = _load(args.config)
    if model is None:
        return code
    if args.scenario != BASELINE:
        model = apply_scenario(model, args.scenario,
                               supply_factor=args.supply_factor)

    out: Optional[Path] = Path(args.out) if args.out else None
    try:
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        _err(f"cannot create {out}: {e.strerror or e}")
        return EXIT_IO

    if args.mode == "monolithic":
        result = solve_monolithic(model)
        plan = plan_from_monolithic(model, result)
        converged = result.status == "optimal"
        summary = f"status: {result.status}  objective: {result.objective}"
    else:
        log_path = out / "iterations.jsonl" if out is not None else None
        engine = NestedBenders(model, epsilon=args.epsilon,
                               max_iterations=args.max_iters,
                               options=SolverOptions(mip_rel_gap=1e-9,
                                                     mip_abs_gap=1e-9),
                               log_path=log_path)
        result = engine.solve()
        plan = plan_from_nbd(model, result)
        converged = result.status == CONVERGED
        summary = (f"status: {result.status}  objective: {result.objective}  "
                   f"lower bound: {result.lower_bound}  gap: {result.gap:.3e}  "
                   f"iterations: {result.n_iterations}  cuts: {result.total_cuts}")
        if result.detail:
            summary += f"\ndetail: {result.detail}"

    has_plan = bool(result.values)
    if out is not None and has_plan:
        try:
            write_report(plan, out)
        except OSError as e:
            _err(f"cannot write report: {e.strerror or e}")
            return EXIT_IO
        print(f"wrote {out / 'plan.json'}")
    print(summary)
    if not converged:
        _err("solver did not converge")
        return EXIT_NO_CONVERGENCE
    if out is None:
        print()
        print(format_report(plan), end="")
    return EXIT_OK


def _cmd_report(args) -> int:
    try:
        if args.against:
            cmp_ = compare_runs(args.dir, args.against)
            print(format_comparison(cmp_), end="")
        else:
            print(format_report(read_report(args.dir)), end="")
    except FileNotFoundError as e:
        _err(f"no plan found: {e.filename or e}")
        return EXIT_IO
    except (OSError, ValueError) as e:
        # unreadable JSON, wrong schema version, horizon mismatch
        if "horizon mismatch" in str(e):
            _err(str(e))
            return EXIT_INVALID
        _err(str(e))
        return EXIT_IO
    return EXIT_OK


def _cmd_explain(args) -> int:
    if not args.key:
        print(list_families())
        return EXIT_OK
    try:
        print(explain_key(args.key))
    except KeyError as e:
        _err(e.args[0])
        return EXIT_INVALID
    return EXIT_OK


# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="scgep",
        description="capacity expansion planning under material, "
                    "manufacturing, land and construction-time limits")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a dataset and print its digest")
    v.add_argument("config", help="path to a dataset manifest (JSON)")
    v.set_defaults(func=_cmd_validate)

    s = sub.add_parser("solve", help="solve a dataset and write a plan")
    s.add_argument("--config", required=True,
                   help="path to a dataset manifest (JSON)")
    s.add_argument("--mode", choices=("nbd", "monolithic"), default="nbd",
                   help="decomposition (default) or one whole-horizon solve")
    s.add_argument("--scenario", choices=SCENARIOS, default=BASELINE,
                   help="what-if transform applied before solving")
    s.add_argument("--supply-factor", type=float, default=0.5,
                   help="primary-supply multiplier for scenario limited-sc")
    s.add_argument("--epsilon", type=float, default=1e-6,
                   help="relative gap that counts as converged")
    s.add_argument("--max-iters", type=int, default=50,
                   help="iteration budget for the decomposition")
    s.add_argument("--out", help="directory for plan.json and CSV files")
    s.set_defaults(func=_cmd_solve)

    r = sub.add_parser("report", help="render a written plan directory")
    r.add_argument("dir", help="directory containing plan.json")
    r.add_argument("--against",
                   help="second plan directory; print deltas (that run "
                        "minus this one)")
    r.set_defaults(func=_cmd_report)

    e = sub.add_parser("explain",
                       help="describe a column/row key or list all families")
    e.add_argument("key", nargs="?",
                   help="e.g. 'stock[polysilicon,2030]' or just 'balance'")
    e.set_defaults(func=_cmd_explain)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
