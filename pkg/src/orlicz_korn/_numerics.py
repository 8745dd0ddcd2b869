"""Shared numerical kernels: stable log-scale arithmetic, bracketing searches,
quadrature.

Everything here works on plain floats / numpy arrays and knows nothing about
Young functions.  Values of +inf and -inf are legal throughout and follow the
extended-real conventions of the package (inf <= inf is True).
"""

from __future__ import annotations

import math

import numpy as np

LN2 = math.log(2.0)


def log_sub_exp(a, b):
    """log(max(exp(a) - exp(b), 0)), elementwise; -inf wherever b >= a."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        diff = np.where(b < a, b - a, 0.0)
        out = a + np.log1p(-np.exp(diff))
        out = np.where(b >= a, -np.inf, out)
        out = np.where(np.isinf(a) & (a > 0) & (b < a), np.inf, out)
    return out


def log_trapezoid_prefix(log_f: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Running log of the trapezoid integral of exp(log_f) over the grid x.

    Returns P with P[i] = log( integral_{x[0]}^{x[i]} exp(log_f) ), P[0] = -inf.
    Handles log_f values of -inf (zero integrand) and +inf (divergent).
    """
    lf = np.asarray(log_f, dtype=float)
    dx = np.diff(x)
    with np.errstate(invalid="ignore", over="ignore"):
        cell = np.logaddexp(lf[:-1], lf[1:]) + np.log(dx) - LN2
    prefix = np.empty(len(x))
    prefix[0] = -np.inf
    prefix[1:] = np.logaddexp.accumulate(cell)
    return prefix


def maximize_unimodal(f, lo, hi, iters: int = 48):
    """Batched golden-section maximum of a unimodal function.

    ``f`` maps an array of points to an array of values (may contain -inf),
    ``lo``/``hi`` are arrays of bracket endpoints.  Returns (argmax, max).
    """
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    invphi2 = 1.0 - invphi
    best_x = 0.5 * (lo + hi)
    best_f = f(best_x)
    for _ in range(iters):
        h = hi - lo
        x1 = lo + invphi2 * h
        x2 = lo + invphi * h
        f1 = f(x1)
        f2 = f(x2)
        go_left = f1 >= f2
        hi = np.where(go_left, x2, hi)
        lo = np.where(go_left, lo, x1)
        cand_x = np.where(go_left, x1, x2)
        cand_f = np.where(go_left, f1, f2)
        improve = cand_f > best_f
        best_x = np.where(improve, cand_x, best_x)
        best_f = np.where(improve, cand_f, best_f)
    return best_x, best_f


def bisect_increasing(pred, lo: float, hi: float, iters: int = 100) -> float:
    """Largest x in [lo, hi] with pred(x) True, for a predicate that is True
    on an initial segment.  pred(lo) must be True."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def adaptive_simpson(f, a: float, b: float, rel_tol: float = 1e-8,
                     abs_floor: float = 1e-12, max_depth: int = 48) -> float:
    """Adaptive Simpson quadrature with relative tolerance and absolute floor."""
    if b <= a:
        return 0.0

    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, depth):
        xm1 = 0.5 * (x0 + 0.5 * (x0 + x2))
        xm2 = 0.5 * (0.5 * (x0 + x2) + x2)
        fm1 = f(xm1)
        fm2 = f(xm2)
        xm = 0.5 * (x0 + x2)
        left = simpson(x0, xm, f0, fm1, f1)
        right = simpson(xm, x2, f1, fm2, f2)
        if not (math.isfinite(left) and math.isfinite(right)):
            return left + right
        err = left + right - whole
        if depth >= max_depth or abs(err) <= 15.0 * max(abs_floor, rel_tol * (abs(left) + abs(right))):
            return left + right + err / 15.0
        return (recurse(x0, xm, f0, fm1, f1, left, depth + 1)
                + recurse(xm, x2, f1, fm2, f2, right, depth + 1))

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, 0)
