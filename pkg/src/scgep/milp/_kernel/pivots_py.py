"""Dense bounded-variable two-phase primal simplex, numpy implementation.

The caller passes the problem in equality form ``A x = b`` where the last
``m`` columns of ``A`` are the per-row logicals (a diagonal of +/-1) whose
bounds encode the row sense.  The kernel appends one artificial column per
row internally, runs phase 1 (minimize artificial mass) and phase 2, and
reports shadow-price duals ``y`` with the convention ``y = d(obj)/d(b)``.

This module is the reference implementation; a compiled twin with the same
signature and semantics may replace it at import time (see ``__init__``).
"""

from __future__ import annotations

import numpy as np

ST_OPTIMAL = 0
ST_INFEASIBLE = 1
ST_UNBOUNDED = 2
ST_ITERLIMIT = 3

_LOWER, _UPPER, _FREE, _BASIC = 0, 1, 2, 3

_PIVOT_TOL = 1e-10
_TINY = 1e-12


def bounded_simplex(A, b, c, lb, ub, *, feas_tol=1e-9, opt_tol=1e-9,
                    max_pivots=200_000, refactor_every=100,
                    deterministic=False):
    """Minimize ``c @ x`` over ``A x = b``, ``lb <= x <= ub``.

    Returns a dict with keys: status, x, y, d, objective, pivots,
    phase1_objective, farkas (row multipliers proving infeasibility, or
    None), ray (an improving feasible direction when unbounded, or None).
    """
    A = np.ascontiguousarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    m, n = A.shape
    n_tot = n + m

    lb_full = np.concatenate([np.asarray(lb, dtype=float), np.zeros(m)])
    ub_full = np.concatenate([np.asarray(ub, dtype=float), np.full(m, np.inf)])

    status = np.empty(n_tot, dtype=np.int8)
    xval = np.zeros(n_tot)
    for j in range(n):
        if np.isfinite(lb_full[j]):
            status[j] = _LOWER
            xval[j] = lb_full[j]
        elif np.isfinite(ub_full[j]):
            status[j] = _UPPER
            xval[j] = ub_full[j]
        else:
            status[j] = _FREE
            xval[j] = 0.0

    # initial basis: each row's logical if the residual fits its bounds,
    # otherwise an artificial sized and signed to absorb the residual
    r0 = b - A @ xval[:n]
    art_sign = np.ones(m)
    basis = np.empty(m, dtype=np.int64)
    for i in range(m):
        js = n - m + i
        sig = A[i, js]
        if sig == 0.0:
            raise ValueError(f"row {i} has no logical column at position {js}")
        needed = xval[js] + r0[i] / sig
        if lb_full[js] - feas_tol <= needed <= ub_full[js] + feas_tol:
            basis[i] = js
            status[js] = _BASIC
            xval[js] = min(max(needed, lb_full[js]), ub_full[js])
            ub_full[n + i] = 0.0
            status[n + i] = _LOWER
        else:
            resid = r0[i]  # logical stays at its initial bound
            art_sign[i] = 1.0 if resid >= 0 else -1.0
            basis[i] = n + i
            status[n + i] = _BASIC
            xval[n + i] = abs(resid)

    A_full = np.hstack([A, np.diag(art_sign)]) if m else A.copy()
    B_inv = np.linalg.inv(A_full[:, basis]) if m else np.zeros((0, 0))
    pivots = 0

    def refactor():
        nonlocal B_inv
        B_inv = np.linalg.inv(A_full[:, basis])
        xnb = np.where(status == _BASIC, 0.0, xval)
        xval[basis] = B_inv @ (b - A_full @ xnb)

    def run_phase(cost):
        """Pivot until optimal for `cost`; returns (code, ray-or-None)."""
        nonlocal B_inv, pivots
        bland = deterministic
        stall = 0
        stall_limit = 100 + 2 * m
        since_refactor = 0
        while True:
            if pivots >= max_pivots:
                return ST_ITERLIMIT, None
            y = cost[basis] @ B_inv
            dvec = cost - y @ A_full
            rng = ub_full - lb_full
            can = (rng > 0) & (status != _BASIC)
            ml = can & (status == _LOWER) & (dvec < -opt_tol)
            mu = can & (status == _UPPER) & (dvec > opt_tol)
            mf = can & (status == _FREE) & (np.abs(dvec) > opt_tol)
            elig = ml | mu | mf
            if not elig.any():
                return ST_OPTIMAL, None
            if bland:
                q = int(np.flatnonzero(elig)[0])
            else:
                viol = np.zeros(n_tot)
                viol[ml] = -dvec[ml]
                viol[mu] = dvec[mu]
                viol[mf] = np.abs(dvec[mf])
                q = int(np.argmax(viol))

            if status[q] == _LOWER:
                dirn = 1.0
            elif status[q] == _UPPER:
                dirn = -1.0
            else:
                dirn = 1.0 if dvec[q] < 0 else -1.0
            w = B_inv @ A_full[:, q]
            dw = dirn * w

            xB = xval[basis]
            lbB = lb_full[basis]
            ubB = ub_full[basis]
            ratios = np.full(m, np.inf)
            pos = dw > _PIVOT_TOL
            neg = dw < -_PIVOT_TOL
            ratios[pos] = (xB[pos] - lbB[pos]) / dw[pos]
            ratios[neg] = (xB[neg] - ubB[neg]) / dw[neg]
            np.maximum(ratios, 0.0, out=ratios)
            rmin = ratios.min() if m else np.inf
            flip_cap = rng[q]  # inf for free/one-sided columns

            if rmin >= flip_cap:
                # the entering column hits its opposite bound first
                if not np.isfinite(flip_cap):
                    ray = np.zeros(n_tot)
                    ray[q] = dirn
                    ray[basis] = -dw
                    return ST_UNBOUNDED, ray
                t = flip_cap
                xval[basis] = xB - t * dw
                xval[q] = xval[q] + t * dirn
                status[q] = _UPPER if status[q] == _LOWER else _LOWER
            else:
                tie = ratios <= rmin * (1.0 + 1e-10) + _TINY
                cand = np.flatnonzero(tie)
                absdw = np.abs(dw[cand])
                safe = cand[absdw >= 1e-9]
                if bland and safe.size:
                    r = int(safe[np.argmin(basis[safe])])
                else:
                    best = absdw.max()
                    sub = cand[absdw >= best * (1.0 - 1e-9)]
                    r = int(sub[np.argmin(basis[sub])])
                t = rmin
                if t > 0.0:
                    xval[basis] = xB - t * dw
                leave = int(basis[r])
                if dw[r] > 0:
                    status[leave] = _LOWER
                    xval[leave] = lb_full[leave]
                else:
                    status[leave] = _UPPER
                    xval[leave] = ub_full[leave]
                if leave >= n:
                    # an artificial that leaves the basis is retired for good
                    ub_full[leave] = 0.0
                    status[leave] = _LOWER
                    xval[leave] = 0.0
                xval[q] = xval[q] + t * dirn
                status[q] = _BASIC
                basis[r] = q
                piv = w[r]
                Br = B_inv[r, :] / piv
                B_inv -= np.outer(w, Br)
                B_inv[r, :] = Br
                since_refactor += 1
                if since_refactor >= refactor_every:
                    refactor()
                    since_refactor = 0

            pivots += 1
            if t <= _TINY:
                stall += 1
                if not bland and stall >= stall_limit:
                    bland = True
            else:
                stall = 0

    def result(code, **extra):
        x = xval[:n].copy()
        out = {
            "status": code,
            "x": x,
            "y": None,
            "d": None,
            "objective": float(c @ x),
            "pivots": pivots,
            "phase1_objective": extra.get("phase1_objective", 0.0),
            "farkas": extra.get("farkas"),
            "ray": extra.get("ray"),
        }
        if "y" in extra:
            out["y"] = extra["y"]
            out["d"] = (c - extra["y"] @ A) if m else c.copy()
        return out

    # phase 1
    c1 = np.zeros(n_tot)
    c1[n:] = 1.0
    code, _ = run_phase(c1)
    if code == ST_ITERLIMIT:
        return result(code)
    p1_obj = float(np.clip(xval[n:], 0.0, None).sum())
    bmax = float(np.abs(b).max()) if m else 0.0
    if p1_obj > feas_tol * 100.0 * (1.0 + bmax):
        y1 = c1[basis] @ B_inv if m else np.zeros(0)
        return result(ST_INFEASIBLE, phase1_objective=p1_obj, farkas=y1)

    # phase 2
    ub_full[n:] = 0.0
    c2 = np.concatenate([c, np.zeros(m)])
    code, ray = run_phase(c2)
    if code == ST_UNBOUNDED:
        return result(code, ray=ray[:n])
    y2 = c2[basis] @ B_inv if m else np.zeros(0)
    return result(code, y=y2, phase1_objective=p1_obj)
