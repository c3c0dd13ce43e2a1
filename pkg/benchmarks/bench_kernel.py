#!/usr/bin/env python3
"""Compare the compiled pivot kernel against the pure-numpy fallback.

Runs every workload twice — once per backend, each in a fresh process so
the import-time backend choice applies — and reports wall times plus the
speedup.  Objectives must agree bit-for-bit between backends; a mismatch
aborts the run.

Usage:  python3 benchmarks/bench_kernel.py [--repeat N] [--quick]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
MANIFEST = ROOT / "tests" / "fixtures" / "mini2z" / "manifest.json"


# ---------------------------------------------------------------------------
# worker: runs inside one backend

def _random_lp(rng, n_cols: int, n_rows: int, integers: int = 0):
    from scgep.milp import SparseProblem

    prob = SparseProblem()
    for j in range(n_cols):
        prob.add_col(f"x{j}", lb=0.0, ub=10.0,
                     obj=float(rng.uniform(-5.0, -0.5)),
                     integer=j < integers)
    for i in range(n_rows):
        picks = rng.choice(n_cols, size=min(8, n_cols), replace=False)
        coefs = [(f"x{int(j)}", float(rng.uniform(0.2, 2.0))) for j in picks]
        prob.add_row(f"r{i}", coefs, "<=", float(rng.uniform(5.0, 40.0)))
    return prob


def _time_workloads(quick: bool) -> dict:
    import numpy as np

    from scgep.milp import solve_lp, solve_milp
    from scgep.milp._kernel import kernel_name
    from scgep.ingest import load_dataset
    from scgep.formulation import build_monolithic

    sizes = [(60, 40), (120, 90)] if quick else [(60, 40), (120, 90), (240, 180)]
    timings: dict[str, float] = {}
    objectives: dict[str, float] = {}

    for n_cols, n_rows in sizes:
        rng = np.random.default_rng(1234)
        probs = [_random_lp(rng, n_cols, n_rows) for _ in range(20)]
        t0 = time.perf_counter()
        total = 0.0
        for prob in probs:
            res = solve_lp(prob)
            assert res.status == "optimal", res.status
            total += res.objective
        timings[f"lp-{n_cols}x{n_rows}-x20"] = time.perf_counter() - t0
        objectives[f"lp-{n_cols}x{n_rows}-x20"] = total

    rng = np.random.default_rng(99)
    probs = [_random_lp(rng, 30, 24, integers=10) for _ in range(10)]
    t0 = time.perf_counter()
    total = 0.0
    for prob in probs:
        res = solve_milp(prob)
        assert res.status == "optimal", res.status
        total += res.objective
    timings["milp-30x24-10int-x10"] = time.perf_counter() - t0
    objectives["milp-30x24-10int-x10"] = total

    model = load_dataset(MANIFEST)
    prob = build_monolithic(model)
    t0 = time.perf_counter()
    res = solve_milp(prob)
    timings["plan-mini2z-monolithic"] = time.perf_counter() - t0
    objectives["plan-mini2z-monolithic"] = res.objective

    return {"backend": kernel_name(), "timings": timings,
            "objectives": objectives}


# ---------------------------------------------------------------------------
# orchestrator

def _run_backend(pure: bool, args) -> dict:
    env = dict(os.environ)
    env["SCGEP_PURE_PY"] = "1" if pure else "0"
    cmd = [sys.executable, __file__, "--worker"]
    if args.quick:
        cmd.append("--quick")
    out = subprocess.run(cmd, env=env, capture_output=True, text=True,
                         check=True, cwd=ROOT)
    return json.loads(out.stdout)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    ap.add_argument("--repeat", type=int, default=3,
                    help="best-of-N timing per backend")
    ap.add_argument("--quick", action="store_true",
                    help="skip the largest random batch")
    args = ap.parse_args()

    if args.worker:
        json.dump(_time_workloads(args.quick), sys.stdout)
        return 0

    best: dict[str, dict] = {}
    for pure in (False, True):
        runs = [_run_backend(pure, args) for _ in range(args.repeat)]
        name = runs[0]["backend"]
        merged = {label: min(r["timings"][label] for r in runs)
                  for label in runs[0]["timings"]}
        best[name] = {"timings": merged, "objectives": runs[0]["objectives"]}

    if "compiled" not in best or best["compiled"] is best.get("python"):
        print("compiled extension unavailable; nothing to compare",
              file=sys.stderr)
        return 1

    drift = 0.0
    for label in best["compiled"]["objectives"]:
        a = best["compiled"]["objectives"][label]
        b = best["python"]["objectives"][label]
        rel = abs(a - b) / max(1.0, abs(a))
        drift = max(drift, rel)
        if rel > 1e-9:
            print(f"BACKEND MISMATCH on {label}: {a!r} vs {b!r}",
                  file=sys.stderr)
            return 1

    width = max(len(l) for l in best["compiled"]["timings"])
    print(f"{'workload'.ljust(width)}  {'compiled':>10}  {'python':>10}  speedup")
    for label, tc in best["compiled"]["timings"].items():
        tp = best["python"]["timings"][label]
        print(f"{label.ljust(width)}  {tc:>9.4f}s  {tp:>9.4f}s  {tp / tc:>6.2f}x")
    print(f"\nobjectives agree across backends "
          f"(max relative deviation {drift:.2e})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
