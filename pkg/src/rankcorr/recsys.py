"""Offline ranking evaluation on a timestamped ratings log.

The harness splits a (user, item, rating, timestamp) log into an early
subset A and a late subset B at a cutoff date, builds a ground-truth
ranking of items from their mean rating on A, and scores several
alternative rankings against it: a seeded random ordering, rankings from
binarized ratings (thumbs up iff rating >= 4) on B and on A, and a
perturbation of the ground truth that moves the last item to the front.

Items missing from one side of a comparison are dropped: every score is
computed on the intersection of the two item sets, with both rankings
re-ranked on the shared items.  Ties in mean ratings break toward the
smaller item id.  Both rules are choices of this implementation, so exact
third-party numbers are reproducible only up to them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

import numpy as np

from .coefficients import CoefficientConfig, evaluate
from .errors import (
    DegenerateLengthError,
    EmptyInputError,
    OutOfRangeValueError,
    RatingsFormatError,
)
from .permutations import Permutation, TiePolicy, rank_from_scores
from .standardize import DEFAULT_TOLERANCES, Tolerances, build_standardizer
from .tables import ParameterTable, lookup_params

DEFAULT_SPLIT_DATE = "1998-03-08"

SIMPLIFIED_THRESHOLD = 4

COMPARISON_NAMES = ("random", "simple-rate-B", "simple-rate-A", "last-first")


@dataclass(frozen=True)
class RatingsData:
    """Column-oriented ratings log."""

    user: np.ndarray
    item: np.ndarray
    rating: np.ndarray
    timestamp: np.ndarray

    def __len__(self) -> int:
        return int(self.user.size)

    def select(self, mask: np.ndarray) -> "RatingsData":
        return RatingsData(
            self.user[mask], self.item[mask], self.rating[mask], self.timestamp[mask]
        )


@dataclass(frozen=True)
class Comparison:
    """One alternative ranking aligned with the ground truth.

    Both permutations rank the same shared items, listed ascending by id
    in ``items``; entry i of each image is the rank of ``items[i]``.
    """

    name: str
    items: np.ndarray
    ground_truth: Permutation
    ranking: Permutation


def load_ratings(path: str | Path) -> RatingsData:
    """Parse a whitespace-separated user/item/rating/timestamp file."""
    try:
        with warnings.catch_warnings():
            # An empty file is reported as EmptyInputError below; numpy's
            # advisory warning about it is just noise on top.
            warnings.filterwarnings(
                "ignore", message=".*input contained no data.*", category=UserWarning
            )
            raw = np.loadtxt(path, dtype=np.int64, ndmin=2)
    except OSError:
        raise
    except ValueError as exc:
        raise RatingsFormatError(f"{path}: {exc}") from exc
    if raw.size == 0:
        raise EmptyInputError(f"{path}: no rating rows")
    if raw.shape[1] != 4:
        raise RatingsFormatError(
            f"{path}: expected 4 columns (user item rating timestamp), got {raw.shape[1]}"
        )
    user, item, rating, timestamp = raw.T
    if rating.min() < 1 or rating.max() > 5:
        bad = rating[(rating < 1) | (rating > 5)][0]
        raise OutOfRangeValueError(f"{path}: rating {bad} outside 1..5")
    if timestamp.min() < 0:
        raise OutOfRangeValueError(f"{path}: negative timestamp")
    return RatingsData(user, item, rating, timestamp)


def parse_split_date(text: str) -> int:
    """A YYYY-MM-DD date as unix seconds of its UTC midnight."""
    try:
        moment = datetime.strptime(text, "%Y-%m-%d").replace(tzinfo=timezone.utc)
    except ValueError as exc:
        raise RatingsFormatError(f"bad split date {text!r}: {exc}") from exc
    return int(moment.timestamp())


def split_by_timestamp(
    data: RatingsData, split_ts: int
) -> tuple[RatingsData, RatingsData]:
    """Rows strictly before the cutoff land in A, the rest in B."""
    early = data.timestamp < split_ts
    a, b = data.select(early), data.select(~early)
    if len(a) == 0 or len(b) == 0:
        raise DegenerateLengthError(
            f"split at {split_ts} leaves an empty subset ({len(a)} early, {len(b)} late)"
        )
    return a, b


def mean_rating_by_item(
    data: RatingsData, *, simplified: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """Per-item mean rating, items ascending by id.

    With ``simplified=True`` each rating is first collapsed to 1 when it is
    at least :data:`SIMPLIFIED_THRESHOLD` and 0 otherwise.
    """
    items, inverse = np.unique(data.item, return_inverse=True)
    values = (
        (data.rating >= SIMPLIFIED_THRESHOLD).astype(np.float64)
        if simplified
        else data.rating.astype(np.float64)
    )
    sums = np.bincount(inverse, weights=values, minlength=items.size)
    counts = np.bincount(inverse, minlength=items.size)
    return items, sums / counts


def ranking_from_means(means: np.ndarray) -> Permutation:
    """Descending-mean ranking; ties go to the earlier (smaller-id) item."""
    return rank_from_scores(means, descending=True, ties=TiePolicy.BREAK_BY_INPUT_ORDER)


def last_first_ranking(perm: Permutation) -> Permutation:
    """Move the bottom-ranked item to the top, shifting the rest down."""
    return Permutation((perm.image + 1) % len(perm))


def align_on_shared_items(
    items_a: np.ndarray,
    ranks_a: Permutation,
    items_b: np.ndarray,
    ranks_b: Permutation,
) -> tuple[np.ndarray, Permutation, Permutation]:
    """Restrict two rankings to their common items and re-rank each.

    The relative order within each ranking is preserved.  Raises
    :class:`DegenerateLengthError` when fewer than two items are shared.
    """
    shared, idx_a, idx_b = np.intersect1d(
        items_a, items_b, assume_unique=True, return_indices=True
    )
    if shared.size < 2:
        raise DegenerateLengthError(
            f"only {shared.size} items shared between the two rankings"
        )
    sub_a = rank_from_scores(
        ranks_a.image[idx_a], descending=False, ties=TiePolicy.REJECT
    )
    sub_b = rank_from_scores(
        ranks_b.image[idx_b], descending=False, ties=TiePolicy.REJECT
    )
    return shared, sub_a, sub_b


def build_comparisons(
    data: RatingsData,
    split_ts: int,
    *,
    seed: int = 0,
) -> list[Comparison]:
    """Ground truth from subset A plus the four alternative rankings."""
    subset_a, subset_b = split_by_timestamp(data, split_ts)
    items, means = mean_rating_by_item(subset_a)
    truth = ranking_from_means(means)
    n = len(truth)

    rng = np.random.default_rng(seed)
    random_ranks = Permutation(rng.permutation(n))

    items_sb, means_sb = mean_rating_by_item(subset_b, simplified=True)
    simple_b = ranking_from_means(means_sb)

    _, means_sa = mean_rating_by_item(subset_a, simplified=True)
    simple_a = ranking_from_means(means_sa)

    comparisons = []
    for name, other_items, other in (
        ("random", items, random_ranks),
        ("simple-rate-B", items_sb, simple_b),
        ("simple-rate-A", items, simple_a),
        ("last-first", items, last_first_ranking(truth)),
    ):
        shared, truth_sub, other_sub = align_on_shared_items(
            items, truth, other_items, other
        )
        comparisons.append(Comparison(name, shared, truth_sub, other_sub))
    return comparisons


def score_comparisons(
    comparisons: Sequence[Comparison],
    configs: Sequence[CoefficientConfig],
    *,
    standardize: bool = False,
    table: ParameterTable | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> list[dict]:
    """Raw (and optionally standardized) coefficients for every pair.

    Returns one row per (comparison, config) as a plain dict, ready for
    tabular or JSON output.
    """
    rows = []
    for comp in comparisons:
        for config in configs:
            raw = float(evaluate(config, comp.ground_truth, comp.ranking))
            row = {
                "comparison": comp.name,
                "coefficient": config.describe(),
                "n": len(comp.ground_truth),
                "raw": raw,
            }
            if standardize:
                params, provenance = lookup_params(
                    config, len(comp.ground_truth), table
                )
                mapper = build_standardizer(params, tolerances)
                row["standardized"] = float(
                    mapper.apply(raw, tolerances=tolerances)
                )
                row["provenance"] = provenance.value
            rows.append(row)
    return rows
