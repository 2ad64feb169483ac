"""Log-log rate fitting."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateFitError

__all__ = ["fit_rate"]


def fit_rate(pairs: Iterable[Sequence[float]]) -> tuple[float, float]:
    """Least-squares exponent of value ~ C * scale^a.

    Returns ``(exponent, residual)`` where the residual is the RMS of the
    log deviations from the fitted line.  Requires at least four pairs
    with strictly positive scales and values.
    """
    data = [(float(s), float(v)) for s, v in pairs]
    if len(data) < 4:
        raise DegenerateFitError(f"need at least 4 pairs to fit, got {len(data)}")
    if any(s <= 0.0 or v <= 0.0 for s, v in data):
        raise DegenerateFitError("rate fits need positive scales and values")
    ls = np.log([s for s, _ in data])
    lv = np.log([v for _, v in data])
    if np.ptp(ls) == 0.0:
        raise DegenerateFitError("all scales identical; slope undefined")
    slope, intercept = np.polyfit(ls, lv, 1)
    resid = lv - (slope * ls + intercept)
    return float(slope), float(math.sqrt(np.mean(resid**2)))
