"""Low-level evaluation kernels for the binomial basis.

Every kernel works in log space: the log of the exact integer binomial
coefficient (computed once per degree and cached) plus k*log(x) and
(n-k)*log1p(-x).  Logs of exact integers keep the absolute error of the
exponent near 1e-13 even at degree 4096, which floating log-gamma cannot
do.  Terms whose exponent is below the double-precision underflow line
are skipped: exp() would return exactly 0.0 for them anyway.

Sums over the basis index are Kahan-compensated.  When numba is
available the kernels are JIT-compiled and parallelized over evaluation
points; a plain numpy fallback with identical semantics is used
otherwise.  Results do not depend on the thread count: each evaluation
point is reduced sequentially.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache

import numpy as np

# exp(a) == 0.0 exactly below this exponent, so the term cannot move a sum
_UNDERFLOW = -746.0

os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    from numba import njit, prange

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False


@lru_cache(maxsize=512)
def logcomb_row(n: int) -> np.ndarray:
    """log(C(n, k)) for k = 0..n, from exact integer binomials."""
    out = np.empty(n + 1)
    c = 1
    for k in range(n + 1):
        out[k] = math.log(c) if c > 1 else 0.0
        c = c * (n - k) // (k + 1)
    out.setflags(write=False)
    return out


if _HAVE_NUMBA:

    @njit(cache=True, parallel=True)
    def _dot_impl(lc, n, xs, gvals, out):  # pragma: no cover - compiled
        for j in prange(xs.size):
            x = xs[j]
            if x <= 0.0:
                out[j] = gvals[0]
                continue
            if x >= 1.0:
                out[j] = gvals[n]
                continue
            lx = math.log(x)
            l1x = math.log1p(-x)
            s = 0.0
            c = 0.0
            for k in range(n + 1):
                a = lc[k] + k * lx + (n - k) * l1x
                if a < _UNDERFLOW:
                    continue
                term = math.exp(a) * gvals[k]
                y = term - c
                t = s + y
                c = (t - s) - y
                s = t
            out[j] = s

    @njit(cache=True, parallel=True)
    def _abs_moment_impl(lc, n, xs, gamma, out):  # pragma: no cover
        for j in prange(xs.size):
            x = xs[j]
            if x <= 0.0 or x >= 1.0:
                out[j] = 0.0 if gamma > 0.0 else 1.0
                continue
            lx = math.log(x)
            l1x = math.log1p(-x)
            s = 0.0
            c = 0.0
            for k in range(n + 1):
                a = lc[k] + k * lx + (n - k) * l1x
                if a < _UNDERFLOW:
                    continue
                d = abs(k - n * x)
                if d == 0.0:
                    w = 1.0 if gamma == 0.0 else 0.0
                else:
                    w = d**gamma
                term = math.exp(a) * w
                y = term - c
                t = s + y
                c = (t - s) - y
                s = t
            out[j] = s

    @njit(cache=True, parallel=True)
    def _signed_moment_impl(lc, n, xs, order, out):  # pragma: no cover
        for j in prange(xs.size):
            x = xs[j]
            if x <= 0.0 or x >= 1.0:
                out[j] = 0.0 if order > 0 else 1.0
                continue
            lx = math.log(x)
            l1x = math.log1p(-x)
            s = 0.0
            c = 0.0
            for k in range(n + 1):
                a = lc[k] + k * lx + (n - k) * l1x
                if a < _UNDERFLOW:
                    continue
                term = math.exp(a) * (x - k / n) ** order
                y = term - c
                t = s + y
                c = (t - s) - y
                s = t
            out[j] = s

    @njit(cache=True, parallel=True)
    def _rows_impl(lc, n, xs, out):  # pragma: no cover
        for j in prange(xs.size):
            x = xs[j]
            if x <= 0.0:
                for k in range(n + 1):
                    out[j, k] = 0.0
                out[j, 0] = 1.0
                continue
            if x >= 1.0:
                for k in range(n + 1):
                    out[j, k] = 0.0
                out[j, n] = 1.0
                continue
            lx = math.log(x)
            l1x = math.log1p(-x)
            for k in range(n + 1):
                a = lc[k] + k * lx + (n - k) * l1x
                out[j, k] = 0.0 if a < _UNDERFLOW else math.exp(a)

else:  # numpy fallbacks, same arithmetic without compensation-breaking opts

    def _exponents(lc, n, x):
        ks = np.arange(n + 1, dtype=float)
        return lc + ks * math.log(x) + (n - ks) * math.log1p(-x)

    def _kahan(terms):
        s = 0.0
        c = 0.0
        for term in terms:
            y = term - c
            t = s + y
            c = (t - s) - y
            s = t
        return s

    def _dot_impl(lc, n, xs, gvals, out):
        for j, x in enumerate(xs):
            if x <= 0.0:
                out[j] = gvals[0]
            elif x >= 1.0:
                out[j] = gvals[n]
            else:
                a = _exponents(lc, n, x)
                p = np.where(a < _UNDERFLOW, 0.0, np.exp(np.maximum(a, _UNDERFLOW)))
                out[j] = _kahan(p * gvals)

    def _abs_moment_impl(lc, n, xs, gamma, out):
        ks = np.arange(n + 1, dtype=float)
        for j, x in enumerate(xs):
            if x <= 0.0 or x >= 1.0:
                out[j] = 0.0 if gamma > 0.0 else 1.0
                continue
            a = _exponents(lc, n, x)
            p = np.where(a < _UNDERFLOW, 0.0, np.exp(np.maximum(a, _UNDERFLOW)))
            d = np.abs(ks - n * x)
            w = np.where(d == 0.0, 1.0 if gamma == 0.0 else 0.0, d ** gamma)
            out[j] = _kahan(p * w)

    def _signed_moment_impl(lc, n, xs, order, out):
        ks = np.arange(n + 1, dtype=float)
        for j, x in enumerate(xs):
            if x <= 0.0 or x >= 1.0:
                out[j] = 0.0 if order > 0 else 1.0
                continue
            a = _exponents(lc, n, x)
            p = np.where(a < _UNDERFLOW, 0.0, np.exp(np.maximum(a, _UNDERFLOW)))
            out[j] = _kahan(p * (x - ks / n) ** order)

    def _rows_impl(lc, n, xs, out):
        for j, x in enumerate(xs):
            if x <= 0.0:
                out[j] = 0.0
                out[j, 0] = 1.0
            elif x >= 1.0:
                out[j] = 0.0
                out[j, n] = 1.0
            else:
                a = _exponents(lc, n, x)
                out[j] = np.where(a < _UNDERFLOW, 0.0, np.exp(np.maximum(a, _UNDERFLOW)))


def _as_points(xs) -> np.ndarray:
    return np.ascontiguousarray(np.atleast_1d(np.asarray(xs, dtype=float)))


def weighted_basis_sum(n: int, xs, gvals: np.ndarray) -> np.ndarray:
    """sum_k g[k] * p_{n,k}(x) for each x, Kahan-compensated."""
    pts = _as_points(xs)
    g = np.ascontiguousarray(np.asarray(gvals, dtype=float))
    out = np.empty(pts.size)
    _dot_impl(logcomb_row(n), n, pts, g, out)
    return out


def absolute_moment_sum(n: int, xs, gamma: float) -> np.ndarray:
    """sum_k |k - n x|^gamma * p_{n,k}(x) for each x."""
    pts = _as_points(xs)
    out = np.empty(pts.size)
    _abs_moment_impl(logcomb_row(n), n, pts, float(gamma), out)
    return out


def signed_moment_sum(n: int, xs, order: int) -> np.ndarray:
    """sum_k (x - k/n)^order * p_{n,k}(x) for each x."""
    pts = _as_points(xs)
    out = np.empty(pts.size)
    _signed_moment_impl(logcomb_row(n), n, pts, int(order), out)
    return out


def basis_matrix(n: int, xs) -> np.ndarray:
    """Rows p_{n,k}(x_j), shape (len(xs), n+1)."""
    pts = _as_points(xs)
    out = np.empty((pts.size, n + 1))
    _rows_impl(logcomb_row(n), n, pts, out)
    return out
