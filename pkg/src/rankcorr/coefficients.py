"""Rank correlation coefficients, standard and top-weighted.

All coefficients share one shape: a normalized sum of pairwise agreement
terms, so every value lands in [-1, 1] with 1 for identical rankings and
-1 for exactly reversed ones.  The weighted variants attach a per-item
weight built from the two rank positions of the item, which lets errors
near the top of the lists dominate the score.

Weight functions are evaluated at 1-based positions: an item ranked at the
top contributes f(1).  Per-item weights are combined across the two
rankings either additively or multiplicatively and normalized to sum to 1.

Two evaluators exist for the weighted Kendall coefficient: a direct
O(n^2) translation of the definition and an O(n log n) merge sweep.  They
are kept algorithmically independent so one can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from .errors import (
    DegenerateLengthError,
    InvalidPositionError,
    LengthMismatchError,
    OutOfRangeValueError,
    ZeroVarianceError,
)
from .permutations import Permutation, invert

# Above this length the batched Kendall paths switch from dense pairwise
# tensors to a per-row merge sweep.
_PAIRWISE_MAX_N = 512

# Target size (in elements) for dense pairwise work chunks.
_PAIRWISE_CHUNK_ELEMENTS = 32_000_000


class CoefficientKind(Enum):
    SPEARMAN = "spearman"
    KENDALL = "kendall"


class WeightKind(Enum):
    HARMONIC = "harmonic"
    INVERSE_QUADRATIC = "inverse_quadratic"
    CONSTANT = "constant"


class WeightScheme(Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


@dataclass(frozen=True)
class WeightFunction:
    """A positive, non-increasing function of the 1-based rank position.

    ``HARMONIC`` is f(i) = 1/i, ``INVERSE_QUADRATIC`` is f(i) = 1/(i+n0)^2
    with a non-negative shift ``n0``, and ``CONSTANT`` is f(i) = 1 (which
    makes every weighted coefficient collapse to its unweighted form).
    """

    kind: WeightKind
    n0: int = 0

    def __post_init__(self) -> None:
        if self.n0 < 0:
            raise OutOfRangeValueError("weight shift n0 must be >= 0")
        if self.kind is not WeightKind.INVERSE_QUADRATIC and self.n0 != 0:
            raise OutOfRangeValueError(f"{self.kind.value} takes no shift")

    @classmethod
    def harmonic(cls) -> "WeightFunction":
        return cls(WeightKind.HARMONIC)

    @classmethod
    def inverse_quadratic(cls, n0: int = 0) -> "WeightFunction":
        return cls(WeightKind.INVERSE_QUADRATIC, n0)

    @classmethod
    def constant(cls) -> "WeightFunction":
        return cls(WeightKind.CONSTANT)

    def describe(self) -> str:
        if self.kind is WeightKind.HARMONIC:
            return "1/i"
        if self.kind is WeightKind.CONSTANT:
            return "1"
        if self.n0 == 0:
            return "1/i^2"
        return f"1/(i+{self.n0})^2"


@dataclass(frozen=True)
class CoefficientConfig:
    """A coefficient kind plus an optional weighting.

    ``weight_function`` and ``scheme`` must be given together; both absent
    means the standard (unweighted) coefficient.
    """

    kind: CoefficientKind
    weight_function: WeightFunction | None = None
    scheme: WeightScheme | None = None

    def __post_init__(self) -> None:
        if (self.weight_function is None) != (self.scheme is None):
            raise OutOfRangeValueError(
                "weight_function and scheme must be supplied together"
            )

    @property
    def weighted(self) -> bool:
        return self.weight_function is not None

    def describe(self) -> str:
        if not self.weighted:
            return self.kind.value
        return (
            f"{self.kind.value} {self.scheme.value} {self.weight_function.describe()}"
        )


def standard_weight_functions() -> tuple[WeightFunction, ...]:
    """The four weight functions used throughout: 1/i and 1/(i+n0)^2 for
    n0 in {0, 1, 2}."""
    return (
        WeightFunction.harmonic(),
        WeightFunction.inverse_quadratic(0),
        WeightFunction.inverse_quadratic(1),
        WeightFunction.inverse_quadratic(2),
    )


def standard_configs() -> tuple[CoefficientConfig, ...]:
    """The 16 weighted configurations: both coefficients, both schemes,
    all four standard weight functions."""
    configs = []
    for kind in CoefficientKind:
        for scheme in WeightScheme:
            for fn in standard_weight_functions():
                configs.append(CoefficientConfig(kind, fn, scheme))
    return tuple(configs)


# ---------------------------------------------------------------------------
# weights


def eval_weight_function(fn: WeightFunction, position: int) -> float:
    """f evaluated at a 1-based rank position."""
    if position < 1:
        raise InvalidPositionError(f"positions are 1-based, got {position}")
    if fn.kind is WeightKind.HARMONIC:
        return 1.0 / position
    if fn.kind is WeightKind.INVERSE_QUADRATIC:
        return 1.0 / (position + fn.n0) ** 2
    return 1.0


def weight_values(fn: WeightFunction, n: int) -> np.ndarray:
    """Vector (f(1), ..., f(n))."""
    if n < 1:
        raise InvalidPositionError("need n >= 1")
    pos = np.arange(1, n + 1, dtype=np.float64)
    if fn.kind is WeightKind.HARMONIC:
        return 1.0 / pos
    if fn.kind is WeightKind.INVERSE_QUADRATIC:
        return 1.0 / (pos + fn.n0) ** 2
    return np.ones(n, dtype=np.float64)


def combine_weights(
    fn: WeightFunction,
    a: Permutation,
    b: Permutation,
    scheme: WeightScheme,
) -> np.ndarray:
    """Per-item weights for the ranking pair, normalized to sum to 1.

    Item i ranked at positions ``a[i]`` and ``b[i]`` (0-based) receives
    ``f(a[i]+1) + f(b[i]+1)`` or ``f(a[i]+1) * f(b[i]+1)`` before
    normalization, depending on the scheme.
    """
    _check_pair(a, b)
    fv = weight_values(fn, len(a))
    fa = fv[a.image]
    fb = fv[b.image]
    raw = fa + fb if scheme is WeightScheme.ADDITIVE else fa * fb
    return raw / raw.sum()


# ---------------------------------------------------------------------------
# standard coefficients


def _check_pair(a: Permutation, b: Permutation) -> None:
    if len(a) != len(b):
        raise LengthMismatchError(f"rankings differ in length: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise DegenerateLengthError("coefficients need at least two items")


def spearman(a: Permutation, b: Permutation) -> float:
    """Spearman's rho via the exact displacement formula for tie-free ranks."""
    _check_pair(a, b)
    n = len(a)
    d = a.image - b.image
    ssd = int(np.dot(d, d))
    return 1.0 - 6.0 * ssd / (n * (n * n - 1))


def kendall(a: Permutation, b: Permutation) -> float:
    """Kendall's tau: normalized concordant-minus-discordant pair count."""
    _check_pair(a, b)
    n = len(a)
    seq = b.image[invert(a).image]
    concordant = int(round(_concordant_weight_sum(seq, np.ones(n))))
    # Ordered-pair normalization n(n-1); tie-free, so every pair is
    # concordant or discordant.
    return (4 * concordant - n * (n - 1)) / (n * (n - 1))


# ---------------------------------------------------------------------------
# weighted coefficients


def weighted_spearman(
    a: Permutation,
    b: Permutation,
    fn: WeightFunction,
    scheme: WeightScheme,
) -> float:
    """Weighted Spearman: Pearson correlation of rank vectors under the
    combined item weights."""
    w = combine_weights(fn, a, b, scheme)
    x = a.image.astype(np.float64)
    y = b.image.astype(np.float64)
    xc = x - np.dot(w, x)
    yc = y - np.dot(w, y)
    den = np.dot(w, xc * xc) * np.dot(w, yc * yc)
    if den <= 0.0:
        raise ZeroVarianceError("zero weighted rank variance")
    return float(np.dot(w, xc * yc) / np.sqrt(den))


def weighted_kendall_naive(
    a: Permutation,
    b: Permutation,
    fn: WeightFunction,
    scheme: WeightScheme,
) -> float:
    """Weighted Kendall evaluated directly from its O(n^2) definition.

    Reference implementation: every ordered pair (i, j) contributes
    ``w_i w_j sgn(a_j - a_i) sgn(b_j - b_i)``, normalized by the total
    off-diagonal weight mass.
    """
    w = combine_weights(fn, a, b, scheme)
    sa = np.sign(a.image[None, :] - a.image[:, None]).astype(np.float64)
    sb = np.sign(b.image[None, :] - b.image[:, None]).astype(np.float64)
    num = float(w @ (sa * sb) @ w)
    den = float(w.sum() ** 2 - np.dot(w, w))
    return num / den


def weighted_kendall_fast(
    a: Permutation,
    b: Permutation,
    fn: WeightFunction,
    scheme: WeightScheme,
) -> float:
    """Weighted Kendall in O(n log n) via a merge sweep.

    Items are laid out in a-rank order; the concordant weight mass is then
    the weight-sum over non-inversions of the induced b-rank sequence,
    which the merge sweep accumulates level by level.
    """
    w = combine_weights(fn, a, b, scheme)
    inv = invert(a).image
    seq = b.image[inv]
    u = w[inv]
    concordant = _concordant_weight_sum(seq, u)
    total = (w.sum() ** 2 - np.dot(w, w)) / 2.0
    return float((2.0 * concordant - total) / total)


def _concordant_weight_sum(seq: np.ndarray, weights: np.ndarray) -> float:
    """Sum of ``weights[m] * weights[k]`` over index pairs m < k with
    ``seq[m] < seq[k]``.

    Bottom-up merge over blocks of doubling width.  At each level the
    elements of every merged block are ordered by value; each element from
    a right half pairs with the left-half weight mass preceding it.  The
    entire level is one stable argsort plus cumulative sums, so the sweep
    is vectorised end to end.
    """
    n = seq.shape[0]
    if n < 2:
        return 0.0
    size = 1 << (n - 1).bit_length()
    vals = np.empty(size, dtype=np.int64)
    vals[:n] = seq
    # Padding entries carry zero weight; any distinct in-range values do.
    vals[n:] = np.arange(n, size, dtype=np.int64)
    w = np.zeros(size, dtype=np.float64)
    w[:n] = weights
    idx = np.arange(size)
    starts = None
    total = 0.0
    width = 1
    while width < size:
        block = idx // (2 * width)
        in_left = (idx // width) % 2 == 0
        order = np.argsort(block * size + vals, kind="stable")
        w_sorted = w[order]
        left_sorted = in_left[order]
        left_w = np.where(left_sorted, w_sorted, 0.0)
        cum = np.cumsum(left_w)
        starts = block * (2 * width)
        base = cum[starts] - left_w[starts]
        prefix = cum - left_w - base
        total += float(np.dot(np.where(left_sorted, 0.0, w_sorted), prefix))
        width *= 2
    return total


# ---------------------------------------------------------------------------
# dispatch


def evaluate(config: CoefficientConfig, a: Permutation, b: Permutation) -> float:
    """Evaluate the configured coefficient on a ranking pair."""
    if not config.weighted:
        if config.kind is CoefficientKind.SPEARMAN:
            return spearman(a, b)
        return kendall(a, b)
    if config.kind is CoefficientKind.SPEARMAN:
        return weighted_spearman(a, b, config.weight_function, config.scheme)
    return weighted_kendall_fast(a, b, config.weight_function, config.scheme)


def evaluate_identity_batch(
    config: CoefficientConfig, perms: np.ndarray
) -> np.ndarray:
    """Coefficient of each permutation row against the identity ranking.

    ``perms`` is ``(rows, n)`` with integer dtype; returns one float per
    row.  Evaluating against the identity loses no generality: any pair
    reduces to this form through its relative permutation.
    """
    perms = np.asarray(perms)
    if perms.ndim != 2:
        raise OutOfRangeValueError("perms must be a 2-d array")
    rows, n = perms.shape
    if n < 2:
        raise DegenerateLengthError("coefficients need at least two items")
    if rows == 0:
        return np.zeros(0, dtype=np.float64)

    if not config.weighted:
        if config.kind is CoefficientKind.SPEARMAN:
            d = perms.astype(np.int64) - np.arange(n, dtype=np.int64)
            ssd = np.einsum("ij,ij->i", d, d)
            return 1.0 - 6.0 * ssd / (n * (n * n - 1))
        return _kendall_identity_batch(perms, None)

    fv = weight_values(config.weight_function, n)
    fb = fv[perms]
    if config.scheme is WeightScheme.ADDITIVE:
        raw = fv[None, :] + fb
    else:
        raw = fv[None, :] * fb
    w = raw / raw.sum(axis=1, keepdims=True)

    if config.kind is CoefficientKind.SPEARMAN:
        x = np.arange(n, dtype=np.float64)
        y = perms.astype(np.float64)
        xm = w @ x
        ym = np.einsum("ij,ij->i", w, y)
        xc = x[None, :] - xm[:, None]
        yc = y - ym[:, None]
        num = np.einsum("ij,ij,ij->i", w, xc, yc)
        den = np.einsum("ij,ij,ij->i", w, xc, xc) * np.einsum(
            "ij,ij,ij->i", w, yc, yc
        )
        return num / np.sqrt(den)

    return _kendall_identity_batch(perms, w)


def _kendall_identity_batch(perms: np.ndarray, w: np.ndarray | None) -> np.ndarray:
    rows, n = perms.shape
    out = np.empty(rows, dtype=np.float64)
    if n <= _PAIRWISE_MAX_N:
        chunk = max(1, _PAIRWISE_CHUNK_ELEMENTS // (n * n))
        s0 = np.sign(
            np.arange(n, dtype=np.int32)[None, :] - np.arange(n, dtype=np.int32)[:, None]
        ).astype(np.float64)
        for lo in range(0, rows, chunk):
            hi = min(lo + chunk, rows)
            p = perms[lo:hi].astype(np.int32)
            sp = np.sign(p[:, None, :] - p[:, :, None]).astype(np.float64)
            sp *= s0[None, :, :]
            if w is None:
                num = sp.sum(axis=(1, 2))
                out[lo:hi] = num / (n * (n - 1))
            else:
                wc = w[lo:hi]
                t = np.einsum("bi,bij->bj", wc, sp)
                num = np.einsum("bj,bj->b", wc, t)
                den = wc.sum(axis=1) ** 2 - np.einsum("bi,bi->b", wc, wc)
                out[lo:hi] = num / den
        return out
    ones = np.ones(n, dtype=np.float64)
    for r in range(rows):
        seq = perms[r].astype(np.int64)
        u = ones if w is None else w[r]
        conc = _concordant_weight_sum(seq, u)
        if w is None:
            out[r] = (4.0 * conc - n * (n - 1)) / (n * (n - 1))
        else:
            total = (u.sum() ** 2 - np.dot(u, u)) / 2.0
            out[r] = (2.0 * conc - total) / total
    return out
