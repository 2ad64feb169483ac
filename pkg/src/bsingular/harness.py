"""Sweep orchestration: boundedness proxies and rate-equivalence fits.

A claim of the form "quantity <= C * rate(n)" can never be verified for
a universal constant by a finite computation; what a sweep can do is
refute divergence.  Each check therefore computes the ratio
quantity/rate over a geometric n-sweep and applies the boundedness
proxy: the maximum over the second half of the sweep must not exceed
1.5x the maximum over the first half.  The factor absorbs grid noise;
the empirical constant is always reported alongside.

Rate equivalences are tested by fitting log-log slopes on both sides
and comparing the exponents.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .combination import make_scheme
from .corpus import TestFunction, check_cw_membership, in_weighted_sobolev
from .endpoint import lagrange_left, lagrange_right, modified_function
from .combination import combo_apply_many, combo_derivative_many
from .errors import ConfigurationError, InsufficientSweepError
from .fitting import fit_rate
from .functions import SampledFunction
from .smoothness import (
    GridResolution,
    JacobiWeight,
    ModulusEstimate,
    StepWeight,
    VARPHI,
    local_mesh,
    modulus_curve,
    sup_grid,
)

__all__ = [
    "SweepSection",
    "SweepReport",
    "boundedness_proxy",
    "fit_rate",
    "verify_bernstein_inequality",
    "verify_smooth_bound",
    "verify_stability",
    "verify_direct",
    "verify_inverse",
    "verify_lemma_ratios",
    "verify_corollary",
    "integral_bound_ratio",
    "run_checks",
]

SCHEMA_VERSION = 1
PROXY_FACTOR = 1.5
SATURATION_FLOOR = 1e-12
RATE_MATCH_TOL = 0.15


@dataclass
class SweepSection:
    """One verified inequality or equivalence for one function."""

    name: str
    function: str
    params: dict
    n_list: list[int] = field(default_factory=list)
    ratios: dict[str, list[float]] = field(default_factory=dict)
    fits: dict[str, dict] = field(default_factory=dict)
    pairs: dict[str, list[tuple[float, float]]] = field(default_factory=dict)
    empirical_constant: float | None = None
    proxy_ratio: float | None = None
    status: str = "pass"
    notes: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "function": self.function,
            "params": self.params,
            "n_list": self.n_list,
            "ratios": self.ratios,
            "fits": self.fits,
            "pairs": {k: [list(p) for p in v] for k, v in self.pairs.items()},
            "empirical_constant": self.empirical_constant,
            "proxy_ratio": self.proxy_ratio,
            "status": self.status,
            "notes": self.notes,
        }


@dataclass
class SweepReport:
    config: dict
    sections: list[SweepSection] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    @property
    def all_ok(self) -> bool:
        return all(s.status in ("pass", "saturated") for s in self.sections)

    def to_json(self) -> str:
        payload = {
            "schema_version": self.schema_version,
            "config": self.config,
            "all_ok": self.all_ok,
            "sections": [s.to_json_dict() for s in self.sections],
        }
        return json.dumps(payload, sort_keys=True, indent=2)

    def csv_rows(self) -> list[tuple]:
        rows = [("criterion", "function", "n", "series", "value", "status")]
        for s in self.sections:
            for series, values in s.ratios.items():
                for n, v in zip(s.n_list, values):
                    rows.append((s.name, s.function, n, series, repr(v), s.status))
        return rows


def boundedness_proxy(values: list[float]) -> tuple[bool, float]:
    """(ok, ratio): max of second half vs max of first half of a sweep."""
    if len(values) < 2:
        return True, 0.0
    half = (len(values) + 1) // 2
    first = max(values[:half])
    second = max(values[half:])
    if first <= SATURATION_FLOOR:
        return second <= SATURATION_FLOOR, 0.0
    ratio = second / first
    return ratio <= PROXY_FACTOR, ratio


def _weighted_sup(w: JacobiWeight, xs: np.ndarray, vals: np.ndarray) -> float:
    return float(np.max(w(xs) * np.abs(vals)))


def _gate_theorem_mode(w: JacobiWeight, phi: StepWeight) -> None:
    if not phi.theorem_mode:
        raise ConfigurationError(
            "step weight violates the hypothesis min{beta(0),beta(1)} >= 1/2 "
            f"(got {phi.left_exponent:g}, {phi.right_exponent:g})"
        )
    if not (w.alpha > 0 and w.beta > 0):
        raise ConfigurationError(
            "the derivative bounds need alpha > 0 and beta > 0 in the weight"
        )


def _finish_boundedness(section: SweepSection, key: str = "bound") -> None:
    values = section.ratios[key]
    if max(values) <= SATURATION_FLOOR:
        section.status = "saturated"
        section.proxy_ratio = 0.0
        section.empirical_constant = max(values)
        return
    ok, ratio = boundedness_proxy(values)
    section.proxy_ratio = ratio
    section.empirical_constant = max(values)
    extra_ok = True
    for other, vals in section.ratios.items():
        if other != key and max(vals) > SATURATION_FLOOR:
            ok2, _ = boundedness_proxy(vals)
            extra_ok = extra_ok and ok2
    section.status = "pass" if (ok and extra_ok) else "fail"


def verify_bernstein_inequality(
    tf: TestFunction,
    w: JacobiWeight,
    phi: StepWeight,
    r: int,
    m: int,
    n_list: list[int],
    resolution: GridResolution | None = None,
    ladder: str = "geometric",
) -> SweepSection:
    """Derivative growth: w phi^r |B*^(r) f| against n^(r/2) ||w f||.

    Also records the cruder unweighted-step ratio against n^r ||w f||,
    which must stay bounded without any step-weight damping.
    """
    _gate_theorem_mode(w, phi)
    check_cw_membership(tf, w)
    res = resolution or GridResolution()
    grid = sup_grid(res)
    section = SweepSection(
        name="derivative_growth",
        function=tf.name,
        params={"r": r, "m": m, "alpha": w.alpha, "beta": w.beta,
                "phi": [phi.left_exponent, phi.right_exponent], "ladder": ladder},
        n_list=list(n_list),
    )
    wf_norm = _weighted_sup(w, grid, tf.fn.values(grid))
    damped, crude = [], []
    for n in n_list:
        scheme = make_scheme(n, m, ladder)
        fn = modified_function(tf.fn, n, r)
        deriv = combo_derivative_many(scheme, fn, r, grid)
        damped.append(
            float(np.max(w(grid) * phi(grid) ** r * np.abs(deriv)))
            / (n ** (r / 2.0) * wf_norm)
        )
        crude.append(_weighted_sup(w, grid, deriv) / (n**r * wf_norm))
    section.ratios["bound"] = damped
    section.ratios["crude_rate"] = crude
    _finish_boundedness(section)
    return section


def verify_stability(
    tf: TestFunction,
    w: JacobiWeight,
    r: int,
    m: int,
    n_list: list[int],
    resolution: GridResolution | None = None,
    ladder: str = "geometric",
) -> SweepSection:
    """Weighted stability of the modified operator: ||w B* f|| vs ||w f||."""
    check_cw_membership(tf, w)
    res = resolution or GridResolution()
    grid = sup_grid(res)
    section = SweepSection(
        name="stability",
        function=tf.name,
        params={"r": r, "m": m, "alpha": w.alpha, "beta": w.beta, "ladder": ladder},
        n_list=list(n_list),
    )
    wf_norm = _weighted_sup(w, grid, tf.fn.values(grid))
    ratios = []
    for n in n_list:
        scheme = make_scheme(n, m, ladder)
        fn = modified_function(tf.fn, n, r)
        vals = combo_apply_many(scheme, fn, grid)
        ratios.append(_weighted_sup(w, grid, vals) / wf_norm)
    section.ratios["bound"] = ratios
    _finish_boundedness(section)
    return section


def _fd_derivative(fn: SampledFunction, r: int, xs: np.ndarray, step: float) -> np.ndarray:
    """Central r-th finite difference of fn with the given step."""
    coeffs = np.array([(-1.0) ** k * math.comb(r, k) for k in range(r + 1)])
    shifts = np.array([r / 2.0 - k for k in range(r + 1)]) * step
    pts = xs[None, :] + shifts[:, None]
    keep = ((pts > 0.0) & (pts < 1.0)).all(axis=0)
    out = np.full(xs.shape, np.nan)
    if keep.any():
        acc = np.zeros(int(keep.sum()))
        for k in range(r + 1):
            acc += coeffs[k] * fn.values(pts[k][keep])
        out[keep] = acc / step**r
    return out


def verify_smooth_bound(
    tf: TestFunction,
    w: JacobiWeight,
    phi: StepWeight,
    r: int,
    m: int,
    n_list: list[int],
    resolution: GridResolution | None = None,
    ladder: str = "geometric",
) -> SweepSection:
    """Smooth-data bound: w phi^r |B*^(r) f| against ||w phi^r f^(r)||.

    Also checks that the modification keeps the weighted derivative norm
    under control (r-th derivative of the modified function obtained by
    finite differencing inside the blend zones) and that the endpoint
    extrapolation error obeys its local-mesh bound.
    """
    _gate_theorem_mode(w, phi)
    if not in_weighted_sobolev(tf, w, phi, r):
        raise ConfigurationError(
            f"{tf.name} has no usable derivative data of order {r} "
            "or an infinite weighted derivative norm"
        )
    res = resolution or GridResolution()
    grid = sup_grid(res)
    section = SweepSection(
        name="smooth_bound",
        function=tf.name,
        params={"r": r, "m": m, "alpha": w.alpha, "beta": w.beta,
                "phi": [phi.left_exponent, phi.right_exponent], "ladder": ladder},
        n_list=list(n_list),
    )
    deriv_f = np.asarray(tf.fn.derivative(r)(grid))
    denom = float(np.max(w(grid) * phi(grid) ** r * np.abs(deriv_f)))
    bound, mod_smooth, extrapolation = [], [], []
    for n in n_list:
        scheme = make_scheme(n, m, ladder)
        fn = modified_function(tf.fn, n, r)
        deriv = combo_derivative_many(scheme, fn, r, grid)
        bound.append(float(np.max(w(grid) * phi(grid) ** r * np.abs(deriv))) / denom)

        zone = np.concatenate(
            [g for g in (_zone_grid(n, res), 1.0 - _zone_grid(n, res)) if g.size]
        )
        fd = _fd_derivative(fn, r, zone, step=0.01 / n)
        ok = ~np.isnan(fd)
        zone_sup = float(np.max(w(zone[ok]) * phi(zone[ok]) ** r * np.abs(fd[ok])))
        mod_smooth.append(max(zone_sup, denom) / denom)

        left = _zone_grid(n, res)
        lag = np.asarray(lagrange_left(tf.fn, n, r, left))
        scale = (local_mesh(n, left) / (math.sqrt(n) * phi(left))) ** r
        left_ratio = np.max(
            w(left) * np.abs(tf.fn.values(left) - lag) / (scale * denom)
        )
        right = 1.0 - left
        lag_r = np.asarray(lagrange_right(tf.fn, n, r, right))
        scale_r = (local_mesh(n, right) / (math.sqrt(n) * phi(right))) ** r
        right_ratio = np.max(
            w(right) * np.abs(tf.fn.values(right) - lag_r) / (scale_r * denom)
        )
        extrapolation.append(float(max(left_ratio, right_ratio)))
    section.ratios["bound"] = bound
    section.ratios["modification_smoothness"] = mod_smooth
    section.ratios["extrapolation_remainder"] = extrapolation
    _finish_boundedness(section)
    return section


def _zone_grid(n: int, res: GridResolution) -> np.ndarray:
    """Grid on (0, 2/n], clustered toward 0."""
    hi = 2.0 / n
    uniform = np.linspace(0.0, hi, res.x_uniform)[1:]
    geo = hi * 2.0 ** -np.linspace(1, 40, res.x_geometric)
    return np.unique(np.concatenate([uniform, geo]))


def _direct_pointwise(
    tf: TestFunction,
    w: JacobiWeight,
    phi: StepWeight,
    r: int,
    m: int,
    n: int,
    xs: np.ndarray,
    ladder: str,
) -> np.ndarray:
    scheme = make_scheme(n, m, ladder)
    fn = modified_function(tf.fn, n, r)
    approx = combo_apply_many(scheme, fn, xs)
    return w(xs) * np.abs(tf.fn.values(xs) - approx)


def verify_direct(
    tf: TestFunction,
    w: JacobiWeight,
    phi: StepWeight,
    r: int,
    m: int,
    n_list: list[int],
    resolution: GridResolution | None = None,
    ladder: str = "geometric",
    curve_points: int = 20,
) -> SweepSection:
    """Pointwise error against the modulus at the local argument.

    e(n,x) = w(x) |f - B* f|(x) is compared with the modulus evaluated
    at n^(-1/2) delta_n(x)/phi(x); the modulus curve is precomputed once
    and interpolated log-log (recomputing it per (n,x) would be
    quadratically wasteful).  Points whose modulus argument exceeds
    1/(8r) are dropped: beyond that scale the endpoint windows of the
    modulus sweep most of the interval and its values saturate, which
    says nothing about rates.  The argument is at least
    n^(-1/2) (1 + n^(-1/2)/max phi), so degrees with no admissible
    points are skipped with a note.
    """
    _gate_theorem_mode(w, phi)
    check_cw_membership(tf, w)
    res = resolution or GridResolution()
    grid = sup_grid(res)
    t_hi = 1.0 / (8.0 * r)
    section = SweepSection(
        name="direct_rate",
        function=tf.name,
        params={"r": r, "m": m, "alpha": w.alpha, "beta": w.beta,
                "phi": [phi.left_exponent, phi.right_exponent], "ladder": ladder},
    )
    usable = []
    for n in n_list:
        args = local_mesh(n, grid) / (math.sqrt(n) * phi(grid))
        if np.any(args <= t_hi):
            usable.append(n)
        else:
            section.notes.append(
                f"n={n} skipped: every modulus argument exceeds 1/(8r)"
            )
    if len(usable) < 3:
        raise ConfigurationError(
            f"direct check needs at least 3 degrees with modulus arguments "
            f"below 1/(8r) = {t_hi:g}; raise the n range"
        )
    section.n_list = list(usable)
    t_lo = 0.4 / math.sqrt(max(usable))
    t_grid = np.exp(np.linspace(math.log(t_lo), math.log(t_hi), curve_points))
    curve = modulus_curve(tf.fn, w, phi, r, t_grid, res)
    ratios = []
    sup_errors = []
    for n in usable:
        args = local_mesh(n, grid) / (math.sqrt(n) * phi(grid))
        keep = args <= t_hi
        xs = grid[keep]
        errors = _direct_pointwise(tf, w, phi, r, m, n, xs, ladder)
        sup_errors.append(float(errors.max()))
        if curve.is_degenerate:
            ratios.append(0.0)
            continue
        mods = np.array([curve.value_at(a) for a in args[keep]])
        ok = mods > SATURATION_FLOOR
        ratios.append(float(np.max(errors[ok] / mods[ok])) if ok.any() else 0.0)
    section.ratios["bound"] = ratios
    section.pairs["error_sup_vs_n"] = [
        (float(n), e) for n, e in zip(usable, sup_errors)
    ]
    if curve.is_degenerate and max(sup_errors) <= 10 * SATURATION_FLOOR:
        section.status = "saturated"
        section.empirical_constant = 0.0
        section.proxy_ratio = 0.0
        section.notes.append("modulus and error both at rounding level")
        return section
    _finish_boundedness(section)
    return section


def _envelope_pairs(
    pairs: list[tuple[float, float]], bins_per_decade: int = 8
) -> list[tuple[float, float]]:
    """Upper envelope of a point cloud in log-log coordinates.

    Bins the abscissas logarithmically and keeps the largest value per
    bin.  The uniform rate order is the decay of the envelope: points
    far below it (regions where the function happens to be smoother)
    carry no information about the binding rate and must not drag a
    least-squares fit.
    """
    if not pairs:
        return []
    logs = np.log10([a for a, _ in pairs])
    lo, hi = logs.min(), logs.max()
    nbins = max(4, int(math.ceil((hi - lo) * bins_per_decade)))
    edges = np.linspace(lo, hi + 1e-12, nbins + 1)
    best: dict[int, tuple[float, float]] = {}
    for (a, e), la in zip(pairs, logs):
        idx = int(np.searchsorted(edges, la, side="right") - 1)
        if idx not in best or e > best[idx][1]:
            best[idx] = (a, e)
    return [best[i] for i in sorted(best)]


def verify_inverse(
    tf: TestFunction,
    w: JacobiWeight,
    phi: StepWeight,
    r: int,
    m: int,
    n_list: list[int],
    t_list,
    resolution: GridResolution | None = None,
    ladder: str = "geometric",
    x_pool: tuple[float, ...] = (0.5, 0.25, 0.1, 1.0 / 64.0),
    edge_rays: tuple[float, ...] = (4.0, 16.0),
) -> SweepSection:
    """Rate equivalence: the error-decay exponent in the local argument
    must match the modulus-decay exponent in t.

    a_err comes from log e(n, x*) against log(n^(-1/2) delta_n/phi);
    a_mod from the modulus curve.  When the function declares a known
    smoothness order, a_mod is also checked against it.

    The x* set mixes fixed interior points with near-endpoint rays
    x = c/n that track the operator's own mesh.  Fixed points alone
    cannot see an endpoint rate: for large n every fixed x* is an
    interior point and decays at the smooth-data rate, while the
    binding region of an endpoint singularity drifts toward 0 like
    1/n.  The fit runs on the upper envelope of the pooled cloud
    (see :func:`_envelope_pairs`); pairs with exponentially small
    errors or with modulus arguments beyond 1/(8r) are dropped first.
    """
    _gate_theorem_mode(w, phi)
    check_cw_membership(tf, w)
    res = resolution or GridResolution()
    section = SweepSection(
        name="inverse_equivalence",
        function=tf.name,
        params={"r": r, "m": m, "alpha": w.alpha, "beta": w.beta,
                "phi": [phi.left_exponent, phi.right_exponent],
                "ladder": ladder, "x_pool": list(x_pool),
                "edge_rays": list(edge_rays)},
        n_list=list(n_list),
    )
    if tf.expected_alpha0 is not None and not (0.0 < tf.expected_alpha0 < r):
        raise ConfigurationError(
            f"declared smoothness order {tf.expected_alpha0} outside (0, {r})"
        )
    curve = modulus_curve(tf.fn, w, phi, r, np.asarray(t_list, dtype=float), res)
    arg_cap = 1.0 / (8.0 * r)
    raw_pairs = []
    for n in n_list:
        xs = np.asarray(
            sorted(set(x_pool) | {c / n for c in edge_rays if c / n <= 0.5})
        )
        errors = _direct_pointwise(tf, w, phi, r, m, n, xs, ladder)
        args = local_mesh(n, xs) / (math.sqrt(n) * phi(xs))
        for a, e in zip(args, errors):
            if e > SATURATION_FLOOR and a <= arg_cap:
                raw_pairs.append((float(a), float(e)))
    err_pairs = _envelope_pairs(raw_pairs)
    mod_pairs = [
        (t, v) for t, v in zip(curve.t_grid, curve.values) if v > SATURATION_FLOOR
    ]
    section.pairs["error_vs_argument"] = err_pairs
    section.pairs["modulus_vs_t"] = mod_pairs
    if curve.is_degenerate and not err_pairs:
        section.status = "saturated"
        section.notes.append("both sides at rounding level; fit skipped")
        return section
    if len(err_pairs) < 4 or len(mod_pairs) < 4:
        raise InsufficientSweepError(
            f"{tf.name}: fewer than 4 usable points for the inverse fit"
        )
    a_err, res_err = fit_rate(err_pairs)
    a_mod, res_mod = fit_rate(mod_pairs)
    section.fits["error_exponent"] = {
        "exponent": a_err, "residual": res_err, "count": len(err_pairs)
    }
    section.fits["modulus_exponent"] = {
        "exponent": a_mod, "residual": res_mod, "count": len(mod_pairs)
    }
    ok = abs(a_err - a_mod) <= RATE_MATCH_TOL
    if tf.expected_alpha0 is not None:
        declared_ok = abs(a_mod - tf.expected_alpha0) <= RATE_MATCH_TOL
        section.fits["declared_order"] = {
            "expected": tf.expected_alpha0, "matched": declared_ok
        }
        ok = ok and declared_ok
    section.status = "pass" if ok else "fail"
    return section


def verify_lemma_ratios(
    gammas: tuple[float, ...],
    uv_list: tuple[tuple[float, float], ...],
    n_list: list[int],
    resolution: GridResolution | None = None,
) -> list[SweepSection]:
    """Bounded-ratio fields for the two basis-sum estimates.

    First: sum_{k=1..n-1} (k/n)^(-u) (1-k/n)^(-v) p_{n,k}(x) against
    x^(-u) (1-x)^(-v).  Second: sum_k |k - nx|^gamma p_{n,k}(x) against
    n^(gamma/2) varphi(x)^gamma.
    """
    from . import _kernels

    res = resolution or GridResolution()
    grid = sup_grid(res)
    sections = []
    for u, v in uv_list:
        section = SweepSection(
            name="node_weight_ratio",
            function=f"u={u:g},v={v:g}",
            params={"u": u, "v": v},
            n_list=list(n_list),
        )
        ratios = []
        for n in n_list:
            ks = np.arange(n + 1) / n
            gvals = np.zeros(n + 1)
            gvals[1:-1] = ks[1:-1] ** -u * (1.0 - ks[1:-1]) ** -v
            sums = _kernels.weighted_basis_sum(n, grid, gvals)
            ratios.append(float(np.max(sums / (grid**-u * (1.0 - grid) ** -v))))
        section.ratios["bound"] = ratios
        _finish_boundedness(section)
        sections.append(section)
    for gamma in gammas:
        section = SweepSection(
            name="moment_growth_ratio",
            function=f"gamma={gamma:g}",
            params={"gamma": gamma},
            n_list=list(n_list),
        )
        ratios = []
        for n in n_list:
            sums = _kernels.absolute_moment_sum(n, grid, gamma)
            denom = n ** (gamma / 2.0) * VARPHI(grid) ** gamma
            ratios.append(float(np.max(sums / denom)))
        section.ratios["bound"] = ratios
        _finish_boundedness(section)
        sections.append(section)
    return sections


def verify_corollary(
    tf: TestFunction,
    w: JacobiWeight,
    lam: float,
    r: int,
    m: int,
    n_list: list[int],
    resolution: GridResolution | None = None,
    ladder: str = "geometric",
) -> SweepSection:
    """Interpolated weight family varphi^(r lambda) between the two
    derivative bounds; no admissibility floor applies here."""
    if not 0.0 <= lam <= 1.0:
        raise ConfigurationError(f"lambda must lie in [0,1], got {lam}")
    check_cw_membership(tf, w)
    res = resolution or GridResolution()
    grid = sup_grid(res)
    section = SweepSection(
        name="interpolated_bound",
        function=tf.name,
        params={"r": r, "m": m, "lambda": lam, "alpha": w.alpha, "beta": w.beta,
                "ladder": ladder},
        n_list=list(n_list),
    )
    phi_lam = StepWeight(lam / 2.0, lam / 2.0)
    wf_norm = _weighted_sup(w, grid, tf.fn.values(grid))
    smooth = in_weighted_sobolev(tf, w, phi_lam, r)
    if smooth:
        deriv_f = np.asarray(tf.fn.derivative(r)(grid))
        denom_smooth = float(
            np.max(w(grid) * VARPHI(grid) ** (r * lam) * np.abs(deriv_f))
        )
    cw_ratios, smooth_ratios = [], []
    for n in n_list:
        scheme = make_scheme(n, m, ladder)
        fn = modified_function(tf.fn, n, r)
        deriv = combo_derivative_many(scheme, fn, r, grid)
        measured = w(grid) * VARPHI(grid) ** (r * lam) * np.abs(deriv)
        pointwise_rate = np.maximum(
            n ** (r * (1.0 - lam) / 2.0), VARPHI(grid) ** (r * (lam - 1.0))
        )
        cw_ratios.append(
            float(np.max(measured / (n ** (r / 2.0) * pointwise_rate * wf_norm)))
        )
        if smooth:
            smooth_ratios.append(float(np.max(measured)) / denom_smooth)
    section.ratios["bound"] = cw_ratios
    if smooth:
        section.ratios["smooth_branch"] = smooth_ratios
    _finish_boundedness(section)
    return section


def integral_bound_ratio(
    phi: StepWeight, r: int, t: float, x: float, quad_points: int = 32
) -> float:
    """Iterated-average bound: the r-fold integral of phi^(-r) over the
    cube of side t centered at x, relative to t^r phi^(-r)(x)."""
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)
    nodes = 0.5 * t * nodes  # [-t/2, t/2]
    weights = 0.5 * t * weights
    grids = np.meshgrid(*([nodes] * r), indexing="ij")
    total = np.zeros(quad_points**r)
    for g in grids:
        total += g.ravel()
    wprod = np.ones(quad_points**r)
    for g in np.meshgrid(*([weights] * r), indexing="ij"):
        wprod *= g.ravel()
    pts = x + total
    if np.any((pts <= 0.0) | (pts >= 1.0)):
        raise ConfigurationError("integration cube leaves (0,1)")
    integral = float(wprod @ (1.0 / phi(pts) ** r))
    return integral / (t**r / float(phi(x)) ** r)


def run_checks(tasks, threads: int = 1) -> list[SweepSection]:
    """Run (key, callable) tasks, preserving key order in the output.

    Tasks are pure; the merge order is canonical, so the result is
    identical for any thread count.
    """
    tasks = list(tasks)
    if threads <= 1:
        results = {key: fn() for key, fn in tasks}
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {key: pool.submit(fn) for key, fn in tasks}
            results = {key: fut.result() for key, fut in futures.items()}
    out = []
    for key, _ in tasks:
        item = results[key]
        out.extend(item if isinstance(item, list) else [item])
    return out
