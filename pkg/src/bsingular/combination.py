"""Coefficient schemes that combine Bernstein operators of several degrees.

The coefficients C_i solve the linear system

    sum_i C_i            = 1
    sum_i C_i n_i^(-k)   = 0   for k = 1..m-1,

a Vandermonde system in the reciprocals of the degrees.  It is solved by
Gaussian elimination over exact rationals and rounded to floats once:
the float system would already be badly conditioned for five or more
terms, and the identities the coefficients must satisfy are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bernstein import (
    bernstein_apply_many,
    bernstein_derivative_many,
    central_moment_many,
)
from .errors import DomainError
from .functions import SampledFunction

__all__ = [
    "CombinationScheme",
    "make_scheme",
    "scheme_from_degrees",
    "combo_apply",
    "combo_apply_many",
    "combo_derivative",
    "combo_derivative_many",
    "moment_annihilation",
]

LADDERS = ("geometric", "arithmetic")


@dataclass(frozen=True)
class CombinationScheme:
    base_degree: int
    term_count: int
    ladder: str
    degrees: tuple[int, ...]
    exact_coefficients: tuple[Fraction, ...]

    @property
    def coefficients(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.exact_coefficients)

    @property
    def abs_coefficient_sum(self) -> float:
        return float(sum(abs(c) for c in self.exact_coefficients))

    @property
    def growth_constant(self) -> float:
        """K with max degree <= K * base degree."""
        return self.degrees[-1] / self.base_degree

    def to_json_dict(self) -> dict:
        return {
            "n": self.base_degree,
            "m": self.term_count,
            "ladder": self.ladder,
            "degrees": list(self.degrees),
            "coefficients": [
                {
                    "numerator": str(c.numerator),
                    "denominator": str(c.denominator),
                    "float": float(c),
                }
                for c in self.exact_coefficients
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CombinationScheme":
        coeffs = tuple(
            Fraction(int(c["numerator"]), int(c["denominator"]))
            for c in data["coefficients"]
        )
        return cls(
            base_degree=int(data["n"]),
            term_count=int(data["m"]),
            ladder=str(data["ladder"]),
            degrees=tuple(int(d) for d in data["degrees"]),
            exact_coefficients=coeffs,
        )


def _solve_reciprocal_vandermonde(degrees: tuple[int, ...]) -> tuple[Fraction, ...]:
    """Exact elimination for sum C_i y_i^k = [k == 0], y_i = 1/n_i."""
    m = len(degrees)
    ys = [Fraction(1, d) for d in degrees]
    aug = [[ys[i] ** k for i in range(m)] + [Fraction(int(k == 0))] for k in range(m)]
    for col in range(m):
        pivot = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if pivot is None:
            raise DomainError("singular coefficient system (duplicate degrees)")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return tuple(aug[i][m] for i in range(m))


def scheme_from_degrees(
    degrees: tuple[int, ...] | list[int], ladder: str = "custom"
) -> CombinationScheme:
    degrees = tuple(int(d) for d in degrees)
    if not degrees:
        raise DomainError("a scheme needs at least one degree")
    if any(d < 1 for d in degrees):
        raise DomainError("degrees must be positive")
    if len(set(degrees)) != len(degrees):
        raise DomainError("duplicate degrees make the coefficient system singular")
    if list(degrees) != sorted(degrees):
        raise DomainError("degrees must be strictly increasing")
    coeffs = _solve_reciprocal_vandermonde(degrees)
    return CombinationScheme(
        base_degree=degrees[0],
        term_count=len(degrees),
        ladder=ladder,
        degrees=degrees,
        exact_coefficients=coeffs,
    )


def make_scheme(n: int, m: int, ladder: str = "geometric") -> CombinationScheme:
    """Scheme with m strictly increasing degrees starting at n.

    ``geometric`` uses n_i = 2^i n (the default: coefficient vector then
    depends only on degree ratios), ``arithmetic`` uses n_i = (i+1) n.
    """
    if m < 1:
        raise DomainError(f"term count must be >= 1, got {m}")
    if n < 1:
        raise DomainError(f"base degree must be positive, got {n}")
    if ladder == "geometric":
        degrees = tuple(n * 2**i for i in range(m))
    elif ladder == "arithmetic":
        degrees = tuple(n * (i + 1) for i in range(m))
    else:
        raise DomainError(f"unknown ladder {ladder!r}; use one of {LADDERS}")
    return scheme_from_degrees(degrees, ladder=ladder)


def combo_apply_many(scheme: CombinationScheme, f: SampledFunction, xs) -> np.ndarray:
    parts = [
        c * bernstein_apply_many(f, d, xs)
        for c, d in zip(scheme.coefficients, scheme.degrees)
    ]
    return np.sum(parts, axis=0)


def combo_apply(scheme: CombinationScheme, f: SampledFunction, x: float) -> float:
    """sum_i C_i B_{n_i}(f, x)."""
    return float(combo_apply_many(scheme, f, x)[0])


def combo_derivative_many(
    scheme: CombinationScheme, f: SampledFunction, r: int, xs
) -> np.ndarray:
    if r > scheme.base_degree:
        raise DomainError(
            f"derivative order {r} exceeds smallest degree {scheme.base_degree}"
        )
    parts = [
        c * bernstein_derivative_many(f, d, r, xs)
        for c, d in zip(scheme.coefficients, scheme.degrees)
    ]
    return np.sum(parts, axis=0)


def combo_derivative(
    scheme: CombinationScheme, f: SampledFunction, r: int, x: float
) -> float:
    """r-th derivative of the combined operator polynomial at x."""
    return float(combo_derivative_many(scheme, f, r, x)[0])


def moment_annihilation(
    scheme: CombinationScheme, k_max: int, x: float
) -> list[float]:
    """Combined moments sum_i C_i B_{n_i}((t - x)^k, x) for k = 1..k_max.

    A scheme with m terms drives these to rounding level for k <= m: the
    single-operator moment is a polynomial in 1/n of degree k-1 with no
    constant term, and the coefficient conditions kill 1/n..1/n^(m-1).
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    out = []
    for k in range(1, k_max + 1):
        sign = -1.0 if k % 2 else 1.0
        terms = [
            c * sign * float(central_moment_many(d, k, x)[0])
            for c, d in zip(scheme.coefficients, scheme.degrees)
        ]
        out.append(float(np.sum(terms)))
    return out
