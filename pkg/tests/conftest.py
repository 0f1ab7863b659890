from __future__ import annotations

import numpy as np
import pytest

from rankcorr.coefficients import (
    CoefficientConfig,
    CoefficientKind,
    WeightFunction,
    WeightScheme,
    standard_configs,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240311)


@pytest.fixture(scope="session")
def weighted_configs():
    return standard_configs()


@pytest.fixture(scope="session")
def all_configs():
    unweighted = tuple(CoefficientConfig(kind) for kind in CoefficientKind)
    return unweighted + standard_configs()


def config_label(config: CoefficientConfig) -> str:
    return config.describe().replace(" ", "_")


KENDALL_ADD_HARMONIC = CoefficientConfig(
    CoefficientKind.KENDALL, WeightFunction.harmonic(), WeightScheme.ADDITIVE
)

SPEARMAN_ADD_HARMONIC = CoefficientConfig(
    CoefficientKind.SPEARMAN, WeightFunction.harmonic(), WeightScheme.ADDITIVE
)


# Unix midnight of 1970-01-02; rows strictly before it form subset A, so the
# CLI flag --split-date 1970-01-02 reproduces SPLIT_TS exactly.
SPLIT_TS = 86_400


@pytest.fixture
def ratings_file(tmp_path):
    """Small synthetic ratings log: 6 items, clear early/late halves.

    Rows with timestamps below :data:`SPLIT_TS` form subset A (3 raters
    over items 1..6), the rest subset B.  Item 7 appears only in B, so the
    intersection logic gets exercised, and item 3's means tie with item 4's
    under binarization to exercise the tie-break.
    """
    rows = []
    # Subset A: item i gets a mean rating descending in i.
    a_ratings = {1: (5, 5, 4), 2: (5, 4, 4), 3: (4, 4, 4), 4: (4, 3, 4), 5: (3, 3, 2), 6: (2, 1, 2)}
    t = 100
    for item, ratings in a_ratings.items():
        for user, rating in enumerate(ratings, start=1):
            rows.append((user, item, rating, t))
            t += 1
    # Subset B: different preferences, plus an item unseen in A.
    b_ratings = {1: (3, 2), 2: (5, 5), 3: (1, 2), 4: (5, 4), 5: (4, 5), 6: (1, 1), 7: (5, 3)}
    t = SPLIT_TS + 50_000
    for item, ratings in b_ratings.items():
        for user, rating in enumerate(ratings, start=4):
            rows.append((user, item, rating, t))
            t += 1
    path = tmp_path / "ratings.tsv"
    path.write_text(
        "".join(f"{u}\t{i}\t{r}\t{ts}\n" for u, i, r, ts in rows), encoding="utf-8"
    )
    return path
