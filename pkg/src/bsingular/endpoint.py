"""Endpoint regularization of singular functions.

Near each endpoint the function is replaced by the low-degree Lagrange
extrapolant through its values at the first interior nodes, blended back
into the original function by a polynomial cutoff.  The result is finite
on all of [0, 1], agrees with the original away from the endpoints, and
can be fed to the Bernstein operators even when the original blows up.

Layout of the modified function F (order r, degree parameter n):

    [0, 1/n]         left extrapolant L
    (1/n, 2/n)       f + psi(n x - 1) * (L - f)
    [2/n, 1 - 2/n]   f unchanged
    (1-2/n, 1-1/n)   f + psi(n (1-x) - 1) * (R - f)
    [1 - 1/n, 1]     right extrapolant R
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combination import (
    CombinationScheme,
    combo_apply_many,
    combo_derivative_many,
)
from .errors import DomainError
from .functions import SampledFunction

__all__ = [
    "SmoothstepCutoff",
    "lagrange_left",
    "lagrange_right",
    "modified_function",
    "modified_apply",
    "modified_apply_many",
    "modified_derivative",
    "modified_derivative_many",
]


@dataclass(frozen=True)
class SmoothstepCutoff:
    """Polynomial cutoff: 1 on (-inf, 0], 0 on [1, inf).

    ``order`` derivatives vanish at both seams, so the clamped extension
    is C^order; the polynomial core has degree 2*order + 1 and exact
    integer coefficients.
    """

    order: int

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("cutoff order must be >= 1")

    def _step_coeffs(self) -> np.ndarray:
        # S(u) = u^(order+1) * sum_j C(order+j, j) C(2 order+1, order-j) (-u)^j
        N = self.order
        coeffs = np.zeros(2 * N + 2)
        for j in range(N + 1):
            c = math.comb(N + j, j) * math.comb(2 * N + 1, N - j) * (-1) ** j
            coeffs[N + 1 + j] = c
        return coeffs[::-1]  # np.polyval ordering (highest power first)

    def __call__(self, t) -> np.ndarray:
        ts = np.asarray(t, dtype=float)
        u = np.clip(ts, 0.0, 1.0)
        return 1.0 - np.polyval(self._step_coeffs(), u)


def _barycentric_weights(r: int) -> np.ndarray:
    # equispaced nodes: w_i proportional to (-1)^i C(r-1, i)
    return np.array([(-1.0) ** i * math.comb(r - 1, i) for i in range(r)])


def _barycentric_eval(nodes: np.ndarray, fvals: np.ndarray, xs) -> np.ndarray:
    """Second-form barycentric evaluation, valid for extrapolation too."""
    pts = np.atleast_1d(np.asarray(xs, dtype=float))
    w = _barycentric_weights(len(nodes))
    diff = pts[:, None] - nodes[None, :]
    exact = diff == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = w[None, :] / diff
        out = (ratios @ fvals) / ratios.sum(axis=1)
    hit_rows = exact.any(axis=1)
    if hit_rows.any():
        out[hit_rows] = fvals[exact[hit_rows].argmax(axis=1)]
    return out


def _check_nodes(n: int, r: int) -> None:
    if r < 1:
        raise DomainError(f"extrapolation order must be >= 1, got {r}")
    if r >= n:
        raise DomainError(f"nodes i/n, i=1..{r} must stay inside (0,1); n={n}")


def lagrange_left(f: SampledFunction, n: int, r: int, x) -> float | np.ndarray:
    """Degree-(r-1) interpolant of f at nodes 1/n..r/n, evaluated at x."""
    _check_nodes(n, r)
    nodes = np.arange(1, r + 1) / n
    out = _barycentric_eval(nodes, f.values(nodes), x)
    return float(out[0]) if np.isscalar(x) else out


def lagrange_right(f: SampledFunction, n: int, r: int, x) -> float | np.ndarray:
    """Mirror image of :func:`lagrange_left` at nodes 1 - i/n."""
    _check_nodes(n, r)
    nodes = 1.0 - np.arange(1, r + 1) / n
    out = _barycentric_eval(nodes, f.values(nodes), x)
    return float(out[0]) if np.isscalar(x) else out


def modified_function(f: SampledFunction, n: int, r: int) -> SampledFunction:
    """Build the endpoint-modified version of f for degree parameter n.

    Requires the modification zones [0, 2/n] and [1-2/n, 1] to be
    disjoint and the extrapolation nodes to fit inside them.
    """
    if 2 * r >= n:
        raise DomainError(f"modification zones overlap: 2r/n = {2*r}/{n} >= 1")
    if n <= 4:
        raise DomainError(f"zones [0,2/n] and [1-2/n,1] overlap for n={n}")
    left_nodes = np.arange(1, r + 1) / n
    right_nodes = 1.0 - np.arange(1, r + 1) / n
    left_vals = f.values(left_nodes)
    right_vals = f.values(right_nodes)
    psi = SmoothstepCutoff(order=r)
    inv = 1.0 / n

    def left_part(xs):
        return _barycentric_eval(left_nodes, left_vals, xs)

    def right_part(xs):
        return _barycentric_eval(right_nodes, right_vals, xs)

    def evaluate(xs):
        pts = np.atleast_1d(np.asarray(xs, dtype=float))
        out = np.empty(pts.shape)
        left = pts <= inv
        right = pts >= 1.0 - inv
        lblend = (pts > inv) & (pts < 2 * inv)
        rblend = (pts > 1.0 - 2 * inv) & (pts < 1.0 - inv)
        mid = ~(left | right | lblend | rblend)
        if left.any():
            out[left] = left_part(pts[left])
        if right.any():
            out[right] = right_part(pts[right])
        if mid.any():
            out[mid] = f.values(pts[mid])
        if lblend.any():
            xb = pts[lblend]
            fb = f.values(xb)
            out[lblend] = fb + psi(n * xb - 1.0) * (left_part(xb) - fb)
        if rblend.any():
            xb = pts[rblend]
            fb = f.values(xb)
            out[rblend] = fb + psi(n * (1.0 - xb) - 1.0) * (right_part(xb) - fb)
        return out

    return SampledFunction(
        evaluator=evaluate,
        name=f"{f.name}#mod(n={n},r={r})",
        left_limit=float(left_part(np.array([0.0]))[0]),
        right_limit=float(right_part(np.array([1.0]))[0]),
    )


def modified_apply_many(
    scheme: CombinationScheme, f: SampledFunction, r: int, xs
) -> np.ndarray:
    """Combined operator applied to the shared modified function.

    One modification is built from the scheme's base degree and reused
    by every term, whatever its degree.
    """
    fn = modified_function(f, scheme.base_degree, r)
    return combo_apply_many(scheme, fn, xs)


def modified_apply(
    scheme: CombinationScheme, f: SampledFunction, r: int, x: float
) -> float:
    return float(modified_apply_many(scheme, f, r, x)[0])


def modified_derivative_many(
    scheme: CombinationScheme, f: SampledFunction, r_mod: int, r_deriv: int, xs
) -> np.ndarray:
    fn = modified_function(f, scheme.base_degree, r_mod)
    return combo_derivative_many(scheme, fn, r_deriv, xs)


def modified_derivative(
    scheme: CombinationScheme, f: SampledFunction, r_mod: int, r_deriv: int, x: float
) -> float:
    """Derivative of the combined operator built on the modified function."""
    return float(modified_derivative_many(scheme, f, r_mod, r_deriv, x)[0])
