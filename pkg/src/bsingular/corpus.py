"""Test functions with declared endpoint behaviour and smoothness.

The default corpus covers smooth polynomials, interior kinks, endpoint
singular powers (including one genuinely unbounded member) and the
square-root bump; together they exercise every regime the operator
inequalities distinguish.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .functions import SampledFunction, constant, monomial
from .smoothness import JacobiWeight, StepWeight

__all__ = [
    "TestFunction",
    "default_corpus",
    "corpus_by_name",
    "cw_defect",
    "check_cw_membership",
    "in_weighted_sobolev",
]


@dataclass(frozen=True)
class TestFunction:
    """A corpus member: a sampleable function plus its singularity data.

    ``left_exponent``/``right_exponent`` give the leading power of t,
    resp. (1-t), at the endpoints; ``expected_alpha0`` is a known
    smoothness order for rate fits, when one is analytically safe.
    """

    fn: SampledFunction
    left_exponent: float = 0.0
    right_exponent: float = 0.0
    kinks: tuple[float, ...] = field(default=())
    expected_alpha0: float | None = None

    @property
    def name(self) -> str:
        return self.fn.name


def _abs_power(p: float, center: float = 0.5) -> SampledFunction:
    return SampledFunction(
        evaluator=lambda t, p=p, c=center: np.abs(np.asarray(t, dtype=float) - c) ** p,
        name=f"|t-{center:g}|^{p:g}" if p != 1 else f"|t-{center:g}|",
        left_limit=center**p,
        right_limit=(1.0 - center) ** p,
    )


def _sqrt_bump() -> SampledFunction:
    def d1(t):
        ts = np.asarray(t, dtype=float)
        return (1.0 - 2.0 * ts) / (2.0 * np.sqrt(ts * (1.0 - ts)))

    def d2(t):
        ts = np.asarray(t, dtype=float)
        return -1.0 / (4.0 * (ts * (1.0 - ts)) ** 1.5)

    return SampledFunction(
        evaluator=lambda t: np.sqrt(np.asarray(t, dtype=float) * (1.0 - np.asarray(t, dtype=float))),
        name="t^0.5*(1-t)^0.5",
        left_limit=0.0,
        right_limit=0.0,
        derivatives=(d1, d2),
    )


def default_corpus() -> tuple[TestFunction, ...]:
    return (
        TestFunction(constant(1.0)),
        TestFunction(monomial(1.0), left_exponent=1.0),
        TestFunction(monomial(2.0), left_exponent=2.0),
        TestFunction(monomial(3.0), left_exponent=3.0),
        TestFunction(monomial(0.5), left_exponent=0.5),
        TestFunction(monomial(0.75), left_exponent=0.75),
        TestFunction(monomial(2.5), left_exponent=2.5),
        TestFunction(_abs_power(1.0), kinks=(0.5,), expected_alpha0=1.0),
        TestFunction(_abs_power(1.5), kinks=(0.5,), expected_alpha0=1.5),
        TestFunction(monomial(-0.25), left_exponent=-0.25),
        TestFunction(_sqrt_bump(), left_exponent=0.5, right_exponent=0.5),
    )


def corpus_by_name() -> dict[str, TestFunction]:
    return {tf.name: tf for tf in default_corpus()}


def cw_defect(tf: TestFunction, w: JacobiWeight, depth: int = 40) -> float:
    """max |w f| over the deepest dyadic samples toward both endpoints."""
    xs = 2.0 ** -np.arange(depth - 4, depth + 1, dtype=float)
    vals = [np.max(np.abs(w(xs) * tf.fn.values(xs)))]
    xs_r = 1.0 - xs
    vals.append(np.max(np.abs(w(xs_r) * tf.fn.values(xs_r))))
    return float(max(vals))


def check_cw_membership(tf: TestFunction, w: JacobiWeight) -> None:
    """Verify numerically that w*f extends by zero at both endpoints.

    Tests decay along dyadic samples: going 28 octaves deeper must
    shrink |w f| by a factor of four or better (a vanishing power decays
    geometrically; a nonzero limit or a blow-up does not).
    """
    shallow = cw_defect(tf, w, depth=12)
    deep = cw_defect(tf, w, depth=40)
    if not (deep < 1e-8 or deep <= shallow * 0.25):
        raise ConfigurationError(
            f"{tf.name} is not compatible with weight "
            f"(alpha={w.alpha:g}, beta={w.beta:g}): w*f does not vanish at the ends"
        )


def in_weighted_sobolev(
    tf: TestFunction, w: JacobiWeight, phi: StepWeight, r: int
) -> bool:
    """Whether ||w phi^r f^(r)|| is finite.

    Needs r declared derivatives and no interior kinks; endpoint
    integrability is probed by comparing w phi^r |f^(r)| on shallow and
    deep dyadic samples toward each endpoint.
    """
    if len(tf.fn.derivatives) < r or tf.kinks:
        return False
    deriv = tf.fn.derivative(r)

    def level(js) -> float:
        xs = 2.0 ** -np.asarray(js, dtype=float)
        vals = [np.max(np.abs(w(xs) * phi(xs) ** r * np.asarray(deriv(xs))))]
        xs_r = 1.0 - xs
        vals.append(np.max(np.abs(w(xs_r) * phi(xs_r) ** r * np.asarray(deriv(xs_r)))))
        return float(max(vals))

    shallow = level(range(4, 13))
    deep = level(range(36, 45))
    return deep <= 8.0 * shallow + 1e-9
