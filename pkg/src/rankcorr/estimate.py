"""Null-distribution parameter estimation.

For short rankings (n <= 10) the distribution of a coefficient over
uniformly random rankings is computed exactly by sweeping all n!
permutations.  For longer rankings the parameters are estimated by Monte
Carlo sampling at a logarithmic grid of training lengths, then fitted
with polynomial regression in a transformed length variable x(n) so they
can be interpolated (and cautiously extrapolated) to arbitrary n.

The regression pipeline mirrors the two-pass structure of the moments:
the mean curve is fitted first (inverse-variance weighted), then the
variance and left-variance samples are re-centered on the fitted mean
before their own unweighted fits.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .coefficients import CoefficientConfig, CoefficientKind, evaluate_identity_batch
from .errors import (
    DegenerateLengthError,
    EmptyInputError,
    InvalidLengthError,
    OutOfRangeValueError,
    RankDeficientError,
)
from .permutations import (
    DEFAULT_BLOCK_SIZE,
    MAX_ENUMERATION_SIZE,
    iter_permutation_blocks,
    sample_permutation_batch,
)
from .standardize import DistributionParams

logger = logging.getLogger(__name__)

# Largest ranking length handled by exact enumeration.
N_EXACT = MAX_ENUMERATION_SIZE

# Below this mean square error a fit is considered exact and the degree
# search stops (guards the ratio tests against 0/0 on noiseless data).
_MSE_FLOOR = 1e-24

# Monte Carlo sample counts by ranking length: (upper bound, count) pairs,
# where an upper bound of None catches everything larger.
SPEARMAN_SAMPLE_SCHEDULE: tuple[tuple[int | None, int], ...] = (
    (100, 100_000),
    (None, 10_000),
)
KENDALL_SAMPLE_SCHEDULE: tuple[tuple[int | None, int], ...] = (
    (100, 10_000),
    (1500, 1_000),
    (None, 200),
)


class LengthTransform(Enum):
    """Monotone change of variable mapping n to a bounded regressor."""

    INVERSE = "inverse"  # x = 1/n
    INVERSE_LOG = "inverse_log"  # x = 1/ln(n)


def transform_length(n: int, transform: LengthTransform) -> float:
    """x(n) for the given transform; needs n >= 2."""
    if n < 2:
        raise InvalidLengthError(f"length transforms need n >= 2, got {n}")
    if transform is LengthTransform.INVERSE:
        return 1.0 / n
    return 1.0 / math.log(n)


@dataclass(frozen=True)
class RegressionModel:
    """Polynomial in x(n) with coefficients in ascending powers.

    ``n_max`` is the largest length the model was trained on when the
    transform makes extrapolation delicate; None means the fit is safe to
    evaluate at any n >= 2.
    """

    transform: LengthTransform
    coefficients: tuple[float, ...]
    n_max: int | None = None

    def __post_init__(self) -> None:
        if len(self.coefficients) == 0:
            raise OutOfRangeValueError("a model needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def predict(self, n: int) -> float:
        x = transform_length(n, self.transform)
        return float(
            np.polynomial.polynomial.polyval(x, np.asarray(self.coefficients))
        )


@dataclass(frozen=True)
class SampleStats:
    """Monte Carlo moment estimates for one ranking length.

    ``variance`` and ``left_variance`` are second moments about the
    centering value (the sample mean unless a reference mean was given),
    both normalized by the sample count.  ``mean_variance`` estimates the
    variance of the sample mean itself.
    """

    mean: float
    mean_variance: float
    variance: float
    left_variance: float
    n_samples: int
    seed: int


@dataclass(frozen=True)
class TrainingSettings:
    """Knobs for the sampling-plus-regression pipeline."""

    a_min: int = 9
    a_max: int = 30
    growth: float = 1.3
    seed: int = 0
    sample_schedule: tuple[tuple[int | None, int], ...] = KENDALL_SAMPLE_SCHEDULE
    candidate_degrees: tuple[int, ...] = (1, 2, 3, 4, 5, 6, 7, 8)


def default_training_settings(kind: CoefficientKind, seed: int = 0) -> TrainingSettings:
    """Full-scale settings: the Kendall grid stops earlier because each
    sample costs O(n log n) rather than O(n)."""
    if kind is CoefficientKind.SPEARMAN:
        return TrainingSettings(
            a_max=40, seed=seed, sample_schedule=SPEARMAN_SAMPLE_SCHEDULE
        )
    return TrainingSettings(a_max=30, seed=seed, sample_schedule=KENDALL_SAMPLE_SCHEDULE)


def schedule_sample_count(
    schedule: Sequence[tuple[int | None, int]], n: int
) -> int:
    for bound, count in schedule:
        if bound is None or n <= bound:
            return count
    raise OutOfRangeValueError(f"sample schedule does not cover n={n}")


def training_lengths(a_min: int = 9, a_max: int = 30, growth: float = 1.3) -> list[int]:
    """Geometric grid of ranking lengths: round(growth**a), deduplicated.

    Rounding is half-up so the grid is platform-independent.
    """
    if a_min > a_max:
        raise OutOfRangeValueError("a_min must not exceed a_max")
    if growth <= 1.0:
        raise OutOfRangeValueError("growth must exceed 1")
    lengths = {int(math.floor(growth**a + 0.5)) for a in range(a_min, a_max + 1)}
    return sorted(lengths)


# ---------------------------------------------------------------------------
# exact enumeration


def _exact_range_values(
    config: CoefficientConfig, n: int, start: int, stop: int
) -> np.ndarray:
    parts = [
        evaluate_identity_batch(config, block)
        for block in iter_permutation_blocks(n, start=start, stop=stop)
    ]
    return np.concatenate(parts) if parts else np.zeros(0)


_EXACT_CACHE: dict[tuple[CoefficientConfig, int], DistributionParams] = {}


def exact_distribution_params(
    config: CoefficientConfig, n: int, *, threads: int = 1
) -> DistributionParams:
    """Exact (gamma_bar, variance, left_variance) by full enumeration.

    Left variance counts values strictly below the mean.  Results do not
    depend on ``threads``; the index space is partitioned into fixed
    blocks and reduced in block order.
    """
    if n < 2:
        raise DegenerateLengthError("need n >= 2")
    key = (config, n)
    cached = _EXACT_CACHE.get(key)
    if cached is not None:
        return cached
    total = math.factorial(n)
    bounds = list(range(0, total, DEFAULT_BLOCK_SIZE)) + [total]
    ranges = list(zip(bounds[:-1], bounds[1:]))
    if threads > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(
                    _exact_range_values,
                    [config] * len(ranges),
                    [n] * len(ranges),
                    [r[0] for r in ranges],
                    [r[1] for r in ranges],
                )
            )
    else:
        parts = [_exact_range_values(config, n, lo, hi) for lo, hi in ranges]
    values = np.concatenate(parts)
    gamma_bar = float(values.mean())
    d = values - gamma_bar
    sq = d * d
    variance = float(sq.mean())
    left = float(sq[values < gamma_bar].sum() / values.size)
    params = DistributionParams(gamma_bar, variance, left)
    _EXACT_CACHE[key] = params
    return params


# ---------------------------------------------------------------------------
# Monte Carlo sampling

# Chunks are a fixed function of n so results never depend on thread count.
def _mc_chunk_size(n: int) -> int:
    return max(1, min(16_384, 8_000_000 // max(n, 1)))


def _mc_chunk_values(
    config: CoefficientConfig, n: int, seed: int, chunk_index: int, count: int
) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence((seed, chunk_index)))
    perms = sample_permutation_batch(n, count, rng)
    return evaluate_identity_batch(config, perms)


def mc_sample_values(
    config: CoefficientConfig,
    n: int,
    n_samples: int,
    seed: int,
    *,
    threads: int = 1,
) -> np.ndarray:
    """Coefficient values of ``n_samples`` uniformly random rankings.

    Bit-reproducible for a fixed seed: sampling is chunked with one child
    seed per chunk, and chunk boundaries depend only on n.
    """
    if n < 2:
        raise DegenerateLengthError("need n >= 2")
    if n_samples < 1:
        raise EmptyInputError("need at least one sample")
    chunk = _mc_chunk_size(n)
    counts = [
        min(chunk, n_samples - lo) for lo in range(0, n_samples, chunk)
    ]
    indices = list(range(len(counts)))
    if threads > 1 and len(counts) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(
                    _mc_chunk_values,
                    [config] * len(counts),
                    [n] * len(counts),
                    [seed] * len(counts),
                    indices,
                    counts,
                )
            )
    else:
        parts = [
            _mc_chunk_values(config, n, seed, i, c) for i, c in zip(indices, counts)
        ]
    return np.concatenate(parts)


def _stats_from_values(
    values: np.ndarray, seed: int, gamma_bar_ref: float | None
) -> SampleStats:
    n_samples = values.size
    mean = float(values.mean())
    if n_samples > 1:
        mean_variance = float(values.var(ddof=1) / n_samples)
    else:
        mean_variance = float("inf")
    center = mean if gamma_bar_ref is None else gamma_bar_ref
    d = values - center
    sq = d * d
    variance = float(sq.mean())
    left = float(sq[values < center].sum() / n_samples)
    return SampleStats(mean, mean_variance, variance, left, n_samples, seed)


def mc_estimate(
    config: CoefficientConfig,
    n: int,
    n_samples: int,
    seed: int,
    *,
    gamma_bar_ref: float | None = None,
    threads: int = 1,
) -> SampleStats:
    """Monte Carlo moment estimates at one ranking length.

    When ``gamma_bar_ref`` is given, the variance and left variance are
    second moments about that reference (used by the second regression
    pass, which re-centers on the fitted mean curve); the sample mean is
    reported either way.
    """
    values = mc_sample_values(config, n, n_samples, seed, threads=threads)
    return _stats_from_values(values, seed, gamma_bar_ref)


def derive_seed(base_seed: int, label: int) -> int:
    """Stable per-length seed derivation (independent streams per label)."""
    ss = np.random.SeedSequence((base_seed, label))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


# ---------------------------------------------------------------------------
# polynomial regression


def fit_polynomial(
    points: Iterable[tuple[float, float, float]],
    degree: int,
    *,
    transform: LengthTransform = LengthTransform.INVERSE,
    n_max: int | None = None,
) -> RegressionModel:
    """Weighted least squares fit of a degree-``degree`` polynomial.

    ``points`` are (x, y, weight) triples with positive weights; the
    objective is sum of weight * residual^2.  Solved through the scaled
    design matrix and an SVD-based least squares call, never the normal
    equations.  Raises :class:`RankDeficientError` when the design matrix
    has deficient column rank (too few distinct x values).
    """
    pts = list(points)
    if degree < 0:
        raise OutOfRangeValueError("degree must be >= 0")
    if len(pts) < degree + 1:
        raise RankDeficientError(
            f"{len(pts)} points cannot determine degree {degree}"
        )
    x = np.asarray([p[0] for p in pts], dtype=np.float64)
    y = np.asarray([p[1] for p in pts], dtype=np.float64)
    w = np.asarray([p[2] for p in pts], dtype=np.float64)
    if np.any(w <= 0) or not np.all(np.isfinite(w)):
        raise OutOfRangeValueError("weights must be positive and finite")
    root_w = np.sqrt(w)
    design = np.vander(x, degree + 1, increasing=True) * root_w[:, None]
    coef, _, rank, _ = np.linalg.lstsq(design, y * root_w, rcond=None)
    if rank < degree + 1:
        raise RankDeficientError(
            f"design matrix rank {rank} below {degree + 1}; x values too repetitive"
        )
    return RegressionModel(transform, tuple(float(c) for c in coef), n_max)


def select_degree(
    points: Sequence[tuple[float, float, float]],
    candidate_degrees: Sequence[int] = (1, 2, 3, 4, 5, 6, 7, 8),
) -> int:
    """Pick a polynomial degree by diminishing returns in MSE.

    Fits use only the even-index half of ``points`` (list order as given,
    ascending length by convention) while the MSE runs over all points,
    a split that penalizes overfitting.  Starting from the smallest
    candidate, the degree grows to d only while MSE(d)/MSE(d-1) < 0.8, or
    while skipping ahead is justified by MSE(d+1)/MSE(d-1) < 0.5.
    """
    pts = list(points)
    if len(pts) < 2:
        raise EmptyInputError("need at least two points")
    fit_pts = pts[0::2]
    max_degree = len(fit_pts) - 1
    cands = sorted(d for d in set(candidate_degrees) if 1 <= d <= max_degree)
    if not cands:
        raise OutOfRangeValueError("no feasible candidate degrees")

    x_all = np.asarray([p[0] for p in pts])
    y_all = np.asarray([p[1] for p in pts])
    mse_cache: dict[int, float] = {}

    def mse(d: int) -> float:
        if d not in mse_cache:
            model = fit_polynomial(fit_pts, d)
            pred = np.polynomial.polynomial.polyval(
                x_all, np.asarray(model.coefficients)
            )
            mse_cache[d] = float(np.mean((y_all - pred) ** 2))
        return mse_cache[d]

    current = cands[0]
    for nxt in cands[1:]:
        m_cur = mse(current)
        if m_cur <= _MSE_FLOOR:
            break
        accept = mse(nxt) < 0.8 * m_cur
        if not accept and nxt + 1 <= max_degree:
            accept = mse(nxt + 1) < 0.5 * m_cur
        if not accept:
            break
        current = nxt
    return current


# ---------------------------------------------------------------------------
# transform selection and the full pipeline


def gamma_transform(config: CoefficientConfig) -> LengthTransform:
    """Transform for the mean curve: the harmonic weight and every
    multiplicative scheme decay too slowly for x = 1/n to behave."""
    if not config.weighted:
        return LengthTransform.INVERSE
    from .coefficients import WeightKind, WeightScheme

    if config.weight_function.kind is WeightKind.HARMONIC:
        return LengthTransform.INVERSE_LOG
    if config.scheme is WeightScheme.MULTIPLICATIVE:
        return LengthTransform.INVERSE_LOG
    return LengthTransform.INVERSE


def variance_transform(config: CoefficientConfig) -> LengthTransform:
    """Transform for the variance curves: logarithmic only for the
    multiplicative scheme paired with inverse-quadratic weights."""
    if not config.weighted:
        return LengthTransform.INVERSE
    from .coefficients import WeightKind, WeightScheme

    if (
        config.scheme is WeightScheme.MULTIPLICATIVE
        and config.weight_function.kind is WeightKind.INVERSE_QUADRATIC
    ):
        return LengthTransform.INVERSE_LOG
    return LengthTransform.INVERSE


def _model_n_max(transform: LengthTransform, lengths: Sequence[int]) -> int | None:
    if transform is LengthTransform.INVERSE:
        return None
    return max(lengths)


def build_parameter_models(
    config: CoefficientConfig,
    settings: TrainingSettings | None = None,
    *,
    threads: int = 1,
):
    """Run the full estimation pipeline and return a parameter-table entry.

    Exact parameters for n = 3..10, then two Monte Carlo passes over the
    training grid: means (fitted with inverse-variance weights), then
    variances re-centered on the fitted mean curve (fitted unweighted).
    The same per-length seeds are reused across passes, so both see the
    same samples.
    """
    from .tables import ParameterEntry

    if settings is None:
        settings = default_training_settings(config.kind)
    exact = {
        n: exact_distribution_params(config, n, threads=threads)
        for n in range(3, N_EXACT + 1)
    }
    lengths = training_lengths(settings.a_min, settings.a_max, settings.growth)
    if lengths and lengths[0] <= N_EXACT:
        raise OutOfRangeValueError(
            "training lengths overlap the exact range; raise a_min"
        )
    counts = {n: schedule_sample_count(settings.sample_schedule, n) for n in lengths}
    seeds = {n: derive_seed(settings.seed, n) for n in lengths}

    g_transform = gamma_transform(config)
    mean_points = []
    for n in lengths:
        stats = mc_estimate(config, n, counts[n], seeds[n], threads=threads)
        logger.info(
            "mean pass n=%d samples=%d seed=%d mean=%.6f", n, counts[n], seeds[n], stats.mean
        )
        mean_points.append(
            (transform_length(n, g_transform), stats.mean, 1.0 / stats.mean_variance)
        )
    d_gamma = select_degree(mean_points, settings.candidate_degrees)
    gamma_model = fit_polynomial(
        mean_points,
        d_gamma,
        transform=g_transform,
        n_max=_model_n_max(g_transform, lengths),
    )

    v_transform = variance_transform(config)
    v_points = []
    vl_points = []
    for n in lengths:
        ref = gamma_model.predict(n)
        stats = mc_estimate(
            config, n, counts[n], seeds[n], gamma_bar_ref=ref, threads=threads
        )
        logger.info(
            "variance pass n=%d v=%.6f v_left=%.6f", n, stats.variance, stats.left_variance
        )
        x = transform_length(n, v_transform)
        v_points.append((x, stats.variance, 1.0))
        vl_points.append((x, stats.left_variance, 1.0))
    v_n_max = _model_n_max(v_transform, lengths)
    v_model = fit_polynomial(
        v_points,
        select_degree(v_points, settings.candidate_degrees),
        transform=v_transform,
        n_max=v_n_max,
    )
    vl_model = fit_polynomial(
        vl_points,
        select_degree(vl_points, settings.candidate_degrees),
        transform=v_transform,
        n_max=v_n_max,
    )
    return ParameterEntry(
        config=config,
        exact=exact,
        gamma=gamma_model,
        variance=v_model,
        left_variance=vl_model,
    )
