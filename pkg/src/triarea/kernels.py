"""Hot numeric kernels: system evaluation, Jacobians, path tracking.

Polynomial systems arrive flattened: `coeffs[t]` and `exps[t, v]` hold
the coefficient and exponent row of term t, `offsets[j]:offsets[j+1]`
delimits the terms of equation j.

The kernels are written as plain numpy/loop code.  By default they are
compiled with numba; set TRIAREA_BACKEND=numpy to run the identical
source uncompiled.  bench/bench_kernels.py times the two backends
against each other.
"""

from __future__ import annotations

import os

import numpy as np

BACKEND = os.environ.get("TRIAREA_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ValueError(f"TRIAREA_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

# path tracker status codes
CONVERGED = 0
DIVERGED = 1
FAILED = 2


def eval_system(coeffs, exps, offsets, x):
    """Residual vector of the flattened system at x."""
    neq = len(offsets) - 1
    out = np.zeros(neq, dtype=np.complex128)
    for j in range(neq):
        acc = 0.0 + 0.0j
        for t in range(offsets[j], offsets[j + 1]):
            term = coeffs[t]
            for v in range(exps.shape[1]):
                e = exps[t, v]
                for _ in range(e):
                    term = term * x[v]
            acc += term
        out[j] = acc
    return out


def eval_jacobian(coeffs, exps, offsets, x):
    """Jacobian matrix (neq x nvars) of the flattened system at x."""
    neq = len(offsets) - 1
    nvars = exps.shape[1]
    out = np.zeros((neq, nvars), dtype=np.complex128)
    for j in range(neq):
        for t in range(offsets[j], offsets[j + 1]):
            for dv in range(nvars):
                e_dv = exps[t, dv]
                if e_dv == 0:
                    continue
                term = coeffs[t] * e_dv
                for v in range(nvars):
                    e = exps[t, v]
                    if v == dv:
                        e -= 1
                    for _ in range(e):
                        term = term * x[v]
                out[j, dv] += term
    return out


def solve_linear(a, b):
    """Gaussian elimination with partial pivoting on copies of (a, b).

    Returns (solution, ok).  ok is False when a pivot underflows, which
    the tracker treats as a corrector failure rather than an exception.
    """
    n = a.shape[0]
    m = a.astype(np.complex128).copy()
    rhs = b.astype(np.complex128).copy()
    for col in range(n):
        piv = col
        best = abs(m[col, col])
        for r in range(col + 1, n):
            mag = abs(m[r, col])
            if mag > best:
                best = mag
                piv = r
        if best < 1e-300:
            return rhs, False
        if piv != col:
            for c in range(n):
                tmp = m[col, c]
                m[col, c] = m[piv, c]
                m[piv, c] = tmp
            tmp = rhs[col]
            rhs[col] = rhs[piv]
            rhs[piv] = tmp
        inv = 1.0 / m[col, col]
        for r in range(col + 1, n):
            factor = m[r, col] * inv
            if factor != 0:
                for c in range(col, n):
                    m[r, c] -= factor * m[col, c]
                rhs[r] -= factor * rhs[col]
    for r in range(n - 1, -1, -1):
        acc = rhs[r]
        for c in range(r + 1, n):
            acc -= m[r, c] * rhs[c]
        rhs[r] = acc / m[r, r]
    return rhs, True


def eval_scales(coeffs, exps, offsets, x):
    """Largest monomial magnitude per equation; the natural backward
    error scale for residual acceptance tests."""
    neq = len(offsets) - 1
    out = np.zeros(neq, dtype=np.float64)
    for j in range(neq):
        best = 0.0
        for t in range(offsets[j], offsets[j + 1]):
            mag = abs(coeffs[t])
            for v in range(exps.shape[1]):
                e = exps[t, v]
                xv = abs(x[v])
                for _ in range(e):
                    mag = mag * xv
            if mag > best:
                best = mag
        out[j] = best
    return out


def homotopy_scales(coeffs, exps, offsets, degrees, gamma, x, t):
    """Per-equation term-magnitude scale of the homotopy residual."""
    fs = eval_scales(coeffs, exps, offsets, x)
    n = len(degrees)
    out = np.zeros(n, dtype=np.float64)
    gmag = abs(gamma)
    for j in range(n):
        g = abs(x[j])
        for _ in range(degrees[j] - 1):
            g = g * abs(x[j])
        out[j] = gmag * t * (g + 1.0) + (1.0 - t) * fs[j]
        if out[j] < 1.0:
            out[j] = 1.0
    return out


def homotopy_residual(coeffs, exps, offsets, degrees, gamma, x, t):
    """H(x, t) = gamma * t * (x_j^{d_j} - 1) + (1 - t) * f_j(x)."""
    f = eval_system(coeffs, exps, offsets, x)
    n = len(degrees)
    h = np.zeros(n, dtype=np.complex128)
    for j in range(n):
        g = x[j]
        for _ in range(degrees[j] - 1):
            g = g * x[j]
        h[j] = gamma * t * (g - 1.0) + (1.0 - t) * f[j]
    return h


def homotopy_jacobian(coeffs, exps, offsets, degrees, gamma, x, t):
    jf = eval_jacobian(coeffs, exps, offsets, x)
    n = len(degrees)
    jh = (1.0 - t) * jf
    for j in range(n):
        dg = degrees[j] + 0.0j
        for _ in range(degrees[j] - 1):
            dg = dg * x[j]
        jh[j, j] += gamma * t * dg
    return jh


def homotopy_dt(coeffs, exps, offsets, degrees, gamma, x):
    """dH/dt = gamma * g(x) - f(x)."""
    f = eval_system(coeffs, exps, offsets, x)
    n = len(degrees)
    out = np.zeros(n, dtype=np.complex128)
    for j in range(n):
        g = x[j]
        for _ in range(degrees[j] - 1):
            g = g * x[j]
        out[j] = gamma * (g - 1.0) - f[j]
    return out


def max_abs(x):
    best = 0.0
    for v in x:
        mag = abs(v)
        if mag > best:
            best = mag
    return best


def track_path(coeffs, exps, offsets, degrees, gamma, x0,
               dt_initial, dt_max, dt_min, truncation, corrector_tol,
               newton_tol, converged_residual):
    """Track one start root from t=1 to t=0.

    Euler predictor, up to 3 Newton corrector iterations per step,
    step halving on failure and 1.5x growth after 3 straight successes.
    Returns (status, x, t_reached, final_residual_norm).
    """
    x = x0.astype(np.complex128).copy()
    t = 1.0
    dt = dt_initial
    successes = 0
    while t > 0.0:
        if max_abs(x) > truncation:
            res = max_abs(homotopy_residual(
                coeffs, exps, offsets, degrees, gamma, x, t))
            return DIVERGED, x, t, res
        step = dt if dt < t else t
        t_new = t - step
        jh = homotopy_jacobian(coeffs, exps, offsets, degrees, gamma, x, t)
        rhs = step * homotopy_dt(coeffs, exps, offsets, degrees, gamma, x)
        dx, ok = solve_linear(jh, rhs)
        corrected = False
        x_new = x.copy()
        if ok:
            x_new = x + dx
            for it in range(4):
                h = homotopy_residual(
                    coeffs, exps, offsets, degrees, gamma, x_new, t_new)
                scales = homotopy_scales(
                    coeffs, exps, offsets, degrees, gamma, x_new, t_new)
                accepted = True
                for j in range(len(h)):
                    if abs(h[j]) >= corrector_tol * scales[j]:
                        accepted = False
                        break
                if accepted:
                    corrected = True
                    break
                if it == 3 or max_abs(x_new) > truncation:
                    break
                jh = homotopy_jacobian(
                    coeffs, exps, offsets, degrees, gamma, x_new, t_new)
                dx, ok2 = solve_linear(jh, -h)
                if not ok2:
                    break
                x_new = x_new + dx
        if corrected:
            x = x_new
            t = t_new
            if max_abs(x) > truncation:
                res = max_abs(homotopy_residual(
                    coeffs, exps, offsets, degrees, gamma, x, t))
                return DIVERGED, x, t, res
            successes += 1
            if successes >= 3:
                dt = dt * 1.5
                if dt > dt_max:
                    dt = dt_max
                successes = 0
        else:
            successes = 0
            dt = dt * 0.5
            if dt < dt_min:
                res = max_abs(homotopy_residual(
                    coeffs, exps, offsets, degrees, gamma, x, t))
                return FAILED, x, t, res
    # endgame-free finish: plain Newton on the target system at t=0
    res = max_abs(eval_system(coeffs, exps, offsets, x))
    for _ in range(30):
        if res < newton_tol:
            break
        jf = eval_jacobian(coeffs, exps, offsets, x)
        f = eval_system(coeffs, exps, offsets, x)
        dx, ok = solve_linear(jf, -f)
        if not ok:
            break
        x = x + dx
        if max_abs(x) > truncation:
            return DIVERGED, x, 0.0, res
        res = max_abs(eval_system(coeffs, exps, offsets, x))
    if res < converged_residual:
        return CONVERGED, x, 0.0, res
    if max_abs(x) > truncation:
        return DIVERGED, x, 0.0, res
    return FAILED, x, 0.0, res


def newton_square(coeffs, exps, offsets, x0, max_iter, tol):
    """Newton iteration on a square system; returns (x, residual, ok)."""
    x = x0.astype(np.complex128).copy()
    res = max_abs(eval_system(coeffs, exps, offsets, x))
    for _ in range(max_iter):
        if res < tol:
            return x, res, True
        jf = eval_jacobian(coeffs, exps, offsets, x)
        f = eval_system(coeffs, exps, offsets, x)
        dx, ok = solve_linear(jf, -f)
        if not ok:
            return x, res, False
        x = x + dx
        res = max_abs(eval_system(coeffs, exps, offsets, x))
    return x, res, res < tol


if BACKEND == "numba":
    import numba

    _jit = numba.njit(cache=True)
    eval_system = _jit(eval_system)
    eval_jacobian = _jit(eval_jacobian)
    solve_linear = _jit(solve_linear)
    eval_scales = _jit(eval_scales)
    homotopy_scales = _jit(homotopy_scales)
    homotopy_residual = _jit(homotopy_residual)
    homotopy_jacobian = _jit(homotopy_jacobian)
    homotopy_dt = _jit(homotopy_dt)
    max_abs = _jit(max_abs)
    track_path = _jit(track_path)
    newton_square = _jit(newton_square)
