"""Distribution-aware standardization of coefficient values.

Under random rankings the coefficients from :mod:`rankcorr.coefficients`
are not centered: weighting skews the null distribution, so the raw value
0 no longer means "no association".  This module builds a piecewise
quadratic map g with

* g(-1) = -1, g(1) = 1,
* g and g' continuous, g non-decreasing,
* E[g(G)] = 0 when G follows the null distribution described by
  (gamma_bar, variance, left_variance).

The map is quadratic on each side of ``gamma_bar`` with a shared value
``g0 = g(gamma_bar)`` and slope ``g1``; the curvatures ``g2`` (left) and
``h2`` (right) are fixed by the boundary conditions.  The zero-mean
condition then ties ``g1`` to ``g0`` except when the variance ratio is
"flat" (left_variance/variance equals (1+gamma_bar)/2), where it fixes
``g0`` instead and leaves ``g1`` free inside a monotonicity interval.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from .coefficients import CoefficientConfig, evaluate
from .errors import (
    BoundConsistencyError,
    FlatDenominatorError,
    InfeasibleFlatBoundError,
    OutOfDomainError,
    OutOfRangeValueError,
    StandardizationError,
)
from .permutations import Permutation


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used while building and applying the map.

    ``flat_ratio`` decides when the variance ratio counts as flat,
    ``degenerate`` relaxes exact zero tests on branch coefficients,
    ``boundary`` bounds the post-construction identity checks, and
    ``domain_slack`` is how far outside [-1, 1] an input may stray before
    application fails.
    """

    flat_ratio: float = 1e-6
    degenerate: float = 1e-8
    boundary: float = 1e-12
    domain_slack: float = 1e-9


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class DistributionParams:
    """Moments of a coefficient's null distribution.

    ``left_variance`` is the part of the variance contributed by values
    strictly below the mean; values at the mean count on the right.
    """

    gamma_bar: float
    variance: float
    left_variance: float

    def __post_init__(self) -> None:
        if not -1.0 < self.gamma_bar < 1.0:
            raise OutOfRangeValueError(f"gamma_bar must lie in (-1, 1), got {self.gamma_bar}")
        if not self.variance > 0.0:
            raise OutOfRangeValueError(f"variance must be positive, got {self.variance}")
        if not 0.0 < self.left_variance <= self.variance:
            raise OutOfRangeValueError(
                "left_variance must lie in (0, variance], got "
                f"{self.left_variance} with variance {self.variance}"
            )
        cap = 1.0 - self.gamma_bar**2
        if self.variance - cap > 1e-12:
            # Possible for noisy estimates; impossible for exact moments.
            warnings.warn(
                f"variance {self.variance} exceeds the feasible bound {cap}",
                RuntimeWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class Standardizer:
    """The fitted piecewise quadratic map."""

    gamma_bar: float
    g0: float
    g1: float
    g2: float
    h2: float

    def apply(self, x: float | np.ndarray, *, tolerances: Tolerances = DEFAULT_TOLERANCES):
        """Evaluate the map at ``x`` (scalar or array), values in [-1, 1]."""
        arr = np.asarray(x, dtype=np.float64)
        if np.any(np.abs(arr) > 1.0 + tolerances.domain_slack):
            raise OutOfDomainError("standardizer input outside [-1, 1]")
        arr = np.clip(arr, -1.0, 1.0)
        d = arr - self.gamma_bar
        quad = np.where(arr < self.gamma_bar, self.g2, self.h2)
        out = self.g0 + self.g1 * d + quad * d * d
        if np.ndim(x) == 0:
            return float(out)
        return out

    def derivative(self, x: float) -> float:
        d = x - self.gamma_bar
        quad = self.g2 if x < self.gamma_bar else self.h2
        return self.g1 + 2.0 * quad * d

    def to_dict(self) -> dict[str, float]:
        return {
            "gamma_bar": self.gamma_bar,
            "g0": self.g0,
            "g1": self.g1,
            "g2": self.g2,
            "h2": self.h2,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Standardizer":
        try:
            return cls(
                gamma_bar=float(data["gamma_bar"]),
                g0=float(data["g0"]),
                g1=float(data["g1"]),
                g2=float(data["g2"]),
                h2=float(data["h2"]),
            )
        except KeyError as exc:
            raise OutOfRangeValueError(f"missing standardizer field: {exc}") from exc


def is_flat_ratio(params: DistributionParams, tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Whether the variance ratio is (numerically) flat."""
    gap = params.left_variance / params.variance - (1.0 + params.gamma_bar) / 2.0
    return abs(gap) < tolerances.flat_ratio


def _curvatures(gamma_bar: float, g0: float, g1: float) -> tuple[float, float]:
    g2 = -(1.0 + g0) / (1.0 + gamma_bar) ** 2 + g1 / (1.0 + gamma_bar)
    h2 = (1.0 - g0) / (1.0 - gamma_bar) ** 2 - g1 / (1.0 - gamma_bar)
    return g2, h2


def _relation_coefficients(params: DistributionParams) -> tuple[float, float]:
    """Constants (B, C) of the zero-mean relation g1 = (B g0 + C)/(1 - gamma_bar^2).

    Derived by expanding E[g(G)] = g0 + g2 V_left + h2 (V - V_left) = 0 with
    the boundary-condition curvatures substituted in.
    """
    gb = params.gamma_bar
    v = params.variance
    vl = params.left_variance
    a = 2.0 * vl - v * (1.0 + gb)
    u2 = (1.0 + gb) ** 2
    b = (v * u2 - 4.0 * gb * vl - (1.0 - gb * gb) ** 2) / a
    c = (2.0 * (1.0 + gb * gb) * vl - v * u2) / a
    return b, c


def g1_from_g0(
    params: DistributionParams,
    g0: float,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Slope implied by the zero-mean condition for a given intercept.

    Only valid away from the flat variance ratio; there the relation
    degenerates (its denominator vanishes) and the flat branch applies.
    """
    a = 2.0 * params.left_variance - params.variance * (1.0 + params.gamma_bar)
    if abs(a) <= tolerances.flat_ratio * params.variance:
        raise FlatDenominatorError(
            "variance ratio is flat; the slope is not determined by g0"
        )
    b, c = _relation_coefficients(params)
    return (b * g0 + c) / (1.0 - params.gamma_bar**2)


def determine_g0(
    params: DistributionParams,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Choose the intercept g0 for the non-flat branch.

    Each of the three monotonicity conditions (slope at -1, at the mean,
    and at 1 must be non-negative) is linear in g0, so each contributes a
    half-line bound; together with the domain [-1, 1] they form an
    interval.  The returned value is 0 when admissible, otherwise the
    interval endpoint closest to 0.  An empty or contradictory interval
    raises :class:`BoundConsistencyError`.
    """
    gb = params.gamma_bar
    eps = tolerances.degenerate
    b, c = _relation_coefficients(params)

    lows = [-1.0]
    ups = [1.0]
    # Bound from g'(-1) >= 0: [2(1-gb) - B] g0 >= C - 2(1-gb).
    coef = 2.0 * (1.0 - gb) - b
    rhs = c - 2.0 * (1.0 - gb)
    if coef > eps:
        lows.append(rhs / coef)
    elif coef < -eps:
        ups.append(rhs / coef)
    elif abs(rhs) > eps:
        raise BoundConsistencyError("degenerate bound at -1 cannot be satisfied")
    # Bound from g'(gamma_bar) >= 0: B g0 >= -C.
    if b > eps:
        lows.append(-c / b)
    elif b < -eps:
        ups.append(-c / b)
    elif abs(c) > eps:
        raise BoundConsistencyError("degenerate bound at the mean cannot be satisfied")
    # Bound from g'(1) >= 0: [2(1+gb) + B] g0 <= 2(1+gb) - C.
    coef = 2.0 * (1.0 + gb) + b
    rhs = 2.0 * (1.0 + gb) - c
    if coef > eps:
        ups.append(rhs / coef)
    elif coef < -eps:
        lows.append(rhs / coef)
    elif abs(rhs) > eps:
        raise BoundConsistencyError("degenerate bound at 1 cannot be satisfied")

    low = max(lows)
    up = min(ups)
    if up < low:
        raise BoundConsistencyError(
            f"empty admissible interval for g0: [{low}, {up}]"
        )
    return min(max(0.0, low), up)


def _build_flat(params: DistributionParams, tolerances: Tolerances) -> Standardizer:
    gb = params.gamma_bar
    v = params.variance
    den = 1.0 - v - gb * gb
    if abs(den) <= tolerances.degenerate:
        # Variance saturates its bound (two-point distribution, e.g. n=2).
        if abs(v * gb) > tolerances.degenerate:
            raise InfeasibleFlatBoundError(
                "flat branch is degenerate with a non-zero mean"
            )
        g0, g1 = 0.0, 1.0
    elif den < 0.0:
        raise InfeasibleFlatBoundError(
            f"variance {v} exceeds the feasible bound {1.0 - gb * gb}"
        )
    else:
        g0 = -v * gb / den
        if abs(g0) > 1.0:
            raise InfeasibleFlatBoundError(
                f"flat-branch intercept {g0} falls outside [-1, 1]"
            )
        upper = 2.0 * min(1.0 - gb - v, 1.0 + gb - v) / den
        if upper < 0.0:
            raise InfeasibleFlatBoundError(
                "no non-negative slope satisfies monotonicity"
            )
        g1 = 1.0 if upper >= 1.0 else upper
    g2, h2 = _curvatures(gb, g0, g1)
    return Standardizer(gb, g0, g1, g2, h2)


def build_standardizer(
    params: DistributionParams,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Standardizer:
    """Construct the standardizing map for the given null-distribution
    moments, verifying its defining properties before returning it."""
    if is_flat_ratio(params, tolerances):
        s = _build_flat(params, tolerances)
    else:
        g0 = determine_g0(params, tolerances)
        g1 = g1_from_g0(params, g0, tolerances)
        g2, h2 = _curvatures(params.gamma_bar, g0, g1)
        s = Standardizer(params.gamma_bar, g0, g1, g2, h2)
    _verify(s, tolerances)
    return s


def _verify(s: Standardizer, tolerances: Tolerances) -> None:
    tol = tolerances.boundary
    problems = []
    if abs(s.apply(-1.0) + 1.0) > tol:
        problems.append("g(-1) != -1")
    if abs(s.apply(1.0) - 1.0) > tol:
        problems.append("g(1) != 1")
    if abs(s.g0) > 1.0 + tol:
        problems.append("g0 outside [-1, 1]")
    for x in (-1.0, s.gamma_bar, 1.0):
        if s.derivative(x) < -tol:
            problems.append(f"negative slope at {x}")
    if problems:
        raise StandardizationError(
            "constructed map violates its contract: " + "; ".join(problems)
        )


def standardized_coefficient(
    config: CoefficientConfig,
    a: Permutation,
    b: Permutation,
    params: DistributionParams,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Raw coefficient followed by standardization, in one call."""
    s = build_standardizer(params, tolerances)
    return s.apply(evaluate(config, a, b), tolerances=tolerances)
