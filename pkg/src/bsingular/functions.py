"""Sampleable functions on the open unit interval.

A :class:`SampledFunction` wraps an evaluator defined on (0, 1) together
with optional endpoint limits and optional derivative evaluators.  The
evaluator must accept both scalars and numpy arrays of interior points.
Functions that blow up at an endpoint simply declare no limit there; any
attempt to sample such a function at that endpoint raises
:class:`~bsingular.errors.ConfigurationError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ConfigurationError

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """A real function on (0,1) with declared endpoint behaviour.

    ``derivatives[i]`` evaluates the (i+1)-th derivative on (0,1) when
    available.  Identity-based hashing keeps instances usable as cache
    keys for per-degree node tables.
    """

    evaluator: Evaluator
    name: str = ""
    left_limit: float | None = None
    right_limit: float | None = None
    derivatives: tuple[Evaluator, ...] = field(default=())

    def value(self, x: float) -> float:
        if x <= 0.0:
            if self.left_limit is None:
                raise ConfigurationError(
                    f"{self.name or 'function'} has no finite limit at 0"
                )
            return self.left_limit
        if x >= 1.0:
            if self.right_limit is None:
                raise ConfigurationError(
                    f"{self.name or 'function'} has no finite limit at 1"
                )
            return self.right_limit
        return float(self.evaluator(x))

    def values(self, xs) -> np.ndarray:
        """Vector evaluation; endpoint entries use the declared limits."""
        pts = np.atleast_1d(np.asarray(xs, dtype=float))
        interior = (pts > 0.0) & (pts < 1.0)
        if interior.all():
            return np.asarray(self.evaluator(pts), dtype=float)
        out = np.empty(pts.shape)
        out[interior] = self.evaluator(pts[interior])
        for mask, limit, side in (
            (pts <= 0.0, self.left_limit, 0),
            (pts >= 1.0, self.right_limit, 1),
        ):
            if mask.any():
                if limit is None:
                    raise ConfigurationError(
                        f"{self.name or 'function'} has no finite limit at {side}"
                    )
                out[mask] = limit
        return out

    def derivative(self, order: int) -> Evaluator:
        if order == 0:
            return self.evaluator
        if order > len(self.derivatives):
            raise ConfigurationError(
                f"{self.name or 'function'} carries no derivative of order {order}"
            )
        return self.derivatives[order - 1]

    @property
    def has_endpoint_limits(self) -> bool:
        return self.left_limit is not None and self.right_limit is not None


def constant(c: float) -> SampledFunction:
    return SampledFunction(
        evaluator=lambda t, c=c: np.full_like(np.asarray(t, dtype=float), c),
        name=f"{c:g}",
        left_limit=float(c),
        right_limit=float(c),
        derivatives=(lambda t: np.zeros_like(np.asarray(t, dtype=float)),) * 2,
    )


def monomial(p: float) -> SampledFunction:
    """t^p with analytic endpoint limits and two derivatives."""

    def d1(t, p=p):
        return p * np.asarray(t, dtype=float) ** (p - 1)

    def d2(t, p=p):
        return p * (p - 1) * np.asarray(t, dtype=float) ** (p - 2)

    left = 0.0 if p > 0 else (1.0 if p == 0 else None)
    return SampledFunction(
        evaluator=lambda t, p=p: np.asarray(t, dtype=float) ** p,
        name=f"t^{p:g}",
        left_limit=left,
        right_limit=1.0,
        derivatives=(d1, d2),
    )


@lru_cache(maxsize=512)
def node_values(f: SampledFunction, n: int) -> np.ndarray:
    """f at the nodes k/n, k = 0..n (endpoints through declared limits)."""
    out = f.values(np.arange(n + 1) / n)
    out.setflags(write=False)
    return out
