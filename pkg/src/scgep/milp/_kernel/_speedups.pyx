# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the numpy simplex core.

Same signature, same pivot rules and tolerances as ``pivots_py``; the
pricing scan, FTRAN/BTRAN, ratio test and eta update run as C loops so
per-pivot cost is a handful of tight passes instead of a dozen array
temporaries.  Any semantic change here must land in ``pivots_py`` too —
the parity tests compare the two on random problems.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs, isfinite

cnp.import_array()

ST_OPTIMAL = 0
ST_INFEASIBLE = 1
ST_UNBOUNDED = 2
ST_ITERLIMIT = 3

cdef int _C_OPTIMAL = 0
cdef int _C_INFEASIBLE = 1
cdef int _C_UNBOUNDED = 2
cdef int _C_ITERLIMIT = 3

cdef signed char _LOWER = 0
cdef signed char _UPPER = 1
cdef signed char _FREE = 2
cdef signed char _BASIC = 3

cdef double _PIVOT_TOL = 1e-10
cdef double _TINY = 1e-12


cdef class _Core:
    cdef cnp.ndarray A_full, b, lb_full, ub_full, xval, status, basis, B_inv
    cdef cnp.ndarray y, dvec, w, ratios
    cdef Py_ssize_t m, n, n_tot
    cdef long long pivots, max_pivots
    cdef int refactor_every
    cdef bint deterministic
    cdef double feas_tol, opt_tol
    cdef object ray_out

    def __init__(self, A_full, b, lb_full, ub_full, xval, status, basis,
                 B_inv, Py_ssize_t n, double feas_tol, double opt_tol,
                 long long max_pivots, int refactor_every, bint deterministic):
        self.A_full = A_full
        self.b = b
        self.lb_full = lb_full
        self.ub_full = ub_full
        self.xval = xval
        self.status = status
        self.basis = basis
        self.B_inv = B_inv
        self.m = A_full.shape[0]
        self.n_tot = A_full.shape[1]
        self.n = n
        self.feas_tol = feas_tol
        self.opt_tol = opt_tol
        self.max_pivots = max_pivots
        self.refactor_every = refactor_every
        self.deterministic = deterministic
        self.pivots = 0
        self.y = np.zeros(self.m)
        self.dvec = np.zeros(self.n_tot)
        self.w = np.zeros(self.m)
        self.ratios = np.zeros(self.m)
        self.ray_out = None

    cdef void _refactor(self):
        Bmat = np.asarray(self.A_full)[:, np.asarray(self.basis)]
        self.B_inv = np.ascontiguousarray(np.linalg.inv(Bmat)) if self.m else np.zeros((0, 0))
        xnb = np.where(np.asarray(self.status) == 3, 0.0, np.asarray(self.xval))
        resid = np.asarray(self.b) - np.asarray(self.A_full) @ xnb
        np.asarray(self.xval)[np.asarray(self.basis)] = np.asarray(self.B_inv) @ resid

    def duals(self, cnp.ndarray cost):
        """y = cost[basis] @ B_inv with C loops."""
        cdef double[::1] c = cost
        cdef double[::1] y = self.y
        cdef double[:, ::1] Binv = self.B_inv
        cdef cnp.int64_t[::1] basis = self.basis
        cdef Py_ssize_t i, k, m = self.m
        cdef double cbi
        for k in range(m):
            y[k] = 0.0
        for i in range(m):
            cbi = c[basis[i]]
            if cbi != 0.0:
                for k in range(m):
                    y[k] += cbi * Binv[i, k]
        return np.asarray(self.y).copy()

    def run_phase(self, cnp.ndarray cost_arr):
        cdef double[::1] cost = cost_arr
        cdef double[:, ::1] A = self.A_full
        cdef double[::1] lb = self.lb_full
        cdef double[::1] ub = self.ub_full
        cdef double[::1] xval = self.xval
        cdef signed char[::1] status = self.status
        cdef cnp.int64_t[::1] basis = self.basis
        cdef double[:, ::1] Binv = self.B_inv
        cdef double[::1] y = self.y
        cdef double[::1] dvec = self.dvec
        cdef double[::1] w = self.w
        cdef double[::1] ratios = self.ratios
        cdef Py_ssize_t m = self.m, n_tot = self.n_tot
        cdef Py_ssize_t i, j, k, q, r, leave, bi
        cdef bint bland = self.deterministic
        cdef long long stall = 0, stall_limit = 100 + 2 * m
        cdef int since_refactor = 0
        cdef double cbi, yi, dj, v, best_v, dirn, acc, dwi, ratio, rmin
        cdef double flip_cap, thresh, best_adw, t, piv, lo, hi
        cdef double opt_tol = self.opt_tol
        cdef cnp.int64_t best_bi
        cdef signed char st

        while True:
            if self.pivots >= self.max_pivots:
                return _C_ITERLIMIT
            # BTRAN: y = cost[basis] @ B_inv
            for k in range(m):
                y[k] = 0.0
            for i in range(m):
                cbi = cost[basis[i]]
                if cbi != 0.0:
                    for k in range(m):
                        y[k] += cbi * Binv[i, k]
            # reduced costs: d = cost - y @ A
            for j in range(n_tot):
                dvec[j] = cost[j]
            for i in range(m):
                yi = y[i]
                if yi != 0.0:
                    for j in range(n_tot):
                        dvec[j] -= yi * A[i, j]
            # pricing
            q = -1
            best_v = 0.0
            for j in range(n_tot):
                st = status[j]
                if st == _BASIC:
                    continue
                if not (ub[j] - lb[j] > 0.0):
                    continue
                dj = dvec[j]
                if st == _LOWER:
                    if dj >= -opt_tol:
                        continue
                    v = -dj
                elif st == _UPPER:
                    if dj <= opt_tol:
                        continue
                    v = dj
                else:
                    if fabs(dj) <= opt_tol:
                        continue
                    v = fabs(dj)
                if bland:
                    q = j
                    break
                if v > best_v:
                    best_v = v
                    q = j
            if q < 0:
                return _C_OPTIMAL

            if status[q] == _LOWER:
                dirn = 1.0
            elif status[q] == _UPPER:
                dirn = -1.0
            else:
                dirn = 1.0 if dvec[q] < 0.0 else -1.0
            # FTRAN: w = B_inv @ A[:, q]
            for i in range(m):
                acc = 0.0
                for k in range(m):
                    acc += Binv[i, k] * A[k, q]
                w[i] = acc
            # ratio test
            rmin = INFINITY
            for i in range(m):
                dwi = dirn * w[i]
                bi = basis[i]
                if dwi > _PIVOT_TOL:
                    lo = lb[bi]
                    ratio = (xval[bi] - lo) / dwi if isfinite(lo) else INFINITY
                elif dwi < -_PIVOT_TOL:
                    hi = ub[bi]
                    ratio = (xval[bi] - hi) / dwi if isfinite(hi) else INFINITY
                else:
                    ratios[i] = INFINITY
                    continue
                if ratio < 0.0:
                    ratio = 0.0
                ratios[i] = ratio
                if ratio < rmin:
                    rmin = ratio
            flip_cap = ub[q] - lb[q]

            if rmin >= flip_cap:
                if not isfinite(flip_cap):
                    ray = np.zeros(n_tot)
                    ray[q] = dirn
                    for i in range(m):
                        ray[basis[i]] = -dirn * w[i]
                    self.ray_out = ray
                    return _C_UNBOUNDED
                t = flip_cap
                for i in range(m):
                    xval[basis[i]] = xval[basis[i]] - t * dirn * w[i]
                xval[q] = xval[q] + t * dirn
                status[q] = _UPPER if status[q] == _LOWER else _LOWER
            else:
                thresh = rmin * (1.0 + 1e-10) + _TINY
                r = -1
                if bland:
                    best_bi = -1
                    for i in range(m):
                        if ratios[i] <= thresh and fabs(dirn * w[i]) >= 1e-9:
                            if best_bi < 0 or basis[i] < best_bi:
                                best_bi = basis[i]
                                r = i
                if r < 0:
                    best_adw = 0.0
                    for i in range(m):
                        if ratios[i] <= thresh:
                            v = fabs(dirn * w[i])
                            if v > best_adw:
                                best_adw = v
                    best_bi = -1
                    for i in range(m):
                        if ratios[i] <= thresh and fabs(dirn * w[i]) >= best_adw * (1.0 - 1e-9):
                            if best_bi < 0 or basis[i] < best_bi:
                                best_bi = basis[i]
                                r = i
                t = rmin
                if t > 0.0:
                    for i in range(m):
                        xval[basis[i]] = xval[basis[i]] - t * dirn * w[i]
                leave = basis[r]
                if dirn * w[r] > 0.0:
                    status[leave] = _LOWER
                    xval[leave] = lb[leave]
                else:
                    status[leave] = _UPPER
                    xval[leave] = ub[leave]
                if leave >= self.n:
                    ub[leave] = 0.0
                    status[leave] = _LOWER
                    xval[leave] = 0.0
                xval[q] = xval[q] + t * dirn
                status[q] = _BASIC
                basis[r] = q
                piv = w[r]
                # eta update: row r divides by pivot, others eliminate
                for k in range(m):
                    Binv[r, k] /= piv
                for i in range(m):
                    if i != r:
                        v = w[i]
                        if v != 0.0:
                            for k in range(m):
                                Binv[i, k] -= v * Binv[r, k]
                since_refactor += 1
                if since_refactor >= self.refactor_every:
                    self._refactor()
                    Binv = self.B_inv
                    since_refactor = 0

            self.pivots += 1
            if t <= _TINY:
                stall += 1
                if not bland and stall >= stall_limit:
                    bland = True
            else:
                stall = 0


def bounded_simplex(A, b, c, lb, ub, *, double feas_tol=1e-9,
                    double opt_tol=1e-9, long long max_pivots=200_000,
                    int refactor_every=100, bint deterministic=False):
    """Drop-in replacement for ``pivots_py.bounded_simplex``."""
    A = np.ascontiguousarray(A, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    c = np.ascontiguousarray(c, dtype=np.float64)
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t n_tot = n + m
    cdef Py_ssize_t i, j

    lb_full = np.concatenate([np.asarray(lb, dtype=np.float64), np.zeros(m)])
    ub_full = np.concatenate([np.asarray(ub, dtype=np.float64), np.full(m, np.inf)])
    status = np.empty(n_tot, dtype=np.int8)
    xval = np.zeros(n_tot)
    for j in range(n):
        if np.isfinite(lb_full[j]):
            status[j] = 0
            xval[j] = lb_full[j]
        elif np.isfinite(ub_full[j]):
            status[j] = 1
            xval[j] = ub_full[j]
        else:
            status[j] = 2
            xval[j] = 0.0

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
            status[js] = 3
            xval[js] = min(max(needed, lb_full[js]), ub_full[js])
            ub_full[n + i] = 0.0
            status[n + i] = 0
        else:
            resid = r0[i]
            art_sign[i] = 1.0 if resid >= 0 else -1.0
            basis[i] = n + i
            status[n + i] = 3
            xval[n + i] = abs(resid)

    A_full = np.ascontiguousarray(np.hstack([A, np.diag(art_sign)])) if m else A.copy()
    B_inv = np.ascontiguousarray(np.linalg.inv(A_full[:, basis])) if m else np.zeros((0, 0))

    core = _Core(A_full, b, lb_full, ub_full, xval, status, basis, B_inv,
                 n, feas_tol, opt_tol, max_pivots, refactor_every,
                 deterministic)

    c1 = np.zeros(n_tot)
    c1[n:] = 1.0
    code = core.run_phase(c1)
    if code == _C_ITERLIMIT:
        return _pack(ST_ITERLIMIT, xval, n, c, A, m, core.pivots, {})
    p1_obj = float(np.clip(xval[n:], 0.0, None).sum())
    bmax = float(np.abs(b).max()) if m else 0.0
    if p1_obj > feas_tol * 100.0 * (1.0 + bmax):
        y1 = core.duals(c1) if m else np.zeros(0)
        return _pack(ST_INFEASIBLE, xval, n, c, A, m, core.pivots,
                     {"phase1_objective": p1_obj, "farkas": y1})

    ub_full[n:] = 0.0
    c2 = np.concatenate([c, np.zeros(m)])
    code = core.run_phase(c2)
    if code == _C_UNBOUNDED:
        return _pack(ST_UNBOUNDED, xval, n, c, A, m, core.pivots,
                     {"ray": np.asarray(core.ray_out)[:n]})
    y2 = core.duals(c2) if m else np.zeros(0)
    status_out = ST_ITERLIMIT if code == _C_ITERLIMIT else ST_OPTIMAL
    return _pack(status_out, xval, n, c, A, m, core.pivots,
                 {"y": y2, "phase1_objective": p1_obj})


def _pack(code, xval, Py_ssize_t n, c, A, Py_ssize_t m, pivots, extra):
    x = np.asarray(xval)[:n].copy()
    out = {
        "status": code,
        "x": x,
        "y": None,
        "d": None,
        "objective": float(c @ x),
        "pivots": int(pivots),
        "phase1_objective": extra.get("phase1_objective", 0.0),
        "farkas": extra.get("farkas"),
        "ray": extra.get("ray"),
    }
    if "y" in extra:
        out["y"] = extra["y"]
        out["d"] = (c - extra["y"] @ A) if m else c.copy()
    return out
