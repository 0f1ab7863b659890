"""Rankings as permutations of {0, ..., n-1} and operations on them.

A ranking over n items is stored as its rank vector: entry ``i`` holds the
rank of item ``i``, with 0 meaning "top of the list".  Rank vectors are
exactly the permutations of {0, ..., n-1}, so group operations (inversion,
composition) apply directly and are exposed as module functions.

The module also provides a lexicographic index codec for permutations,
block-wise exhaustive enumeration (used for exact distribution sweeps), and
uniform random sampling.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DuplicateValueError,
    EmptyInputError,
    OutOfRangeValueError,
    TiesPresentError,
    TooLargeError,
)

# Exhaustive enumeration is capped here: 10! = 3 628 800 permutations is the
# largest sweep that stays cheap enough for routine use.
MAX_ENUMERATION_SIZE = 10

# Row blocks larger than this gain nothing and hurt cache locality.
DEFAULT_BLOCK_SIZE = 1 << 18


class TiePolicy(Enum):
    """What :func:`rank_from_scores` does when two scores are equal."""

    REJECT = "reject"
    BREAK_BY_INPUT_ORDER = "break-by-input-order"


class Permutation:
    """An immutable permutation of {0, ..., n-1} stored as its image array.

    ``Permutation([0, 2, 1])`` maps 0 -> 0, 1 -> 2, 2 -> 1.  Read as a
    ranking, item 1 sits at rank 2 (bottom) and item 2 at rank 1.
    """

    __slots__ = ("_image",)

    def __init__(self, image: Sequence[int] | np.ndarray) -> None:
        arr = np.asarray(image, dtype=np.int64).copy()
        if arr.ndim != 1:
            raise OutOfRangeValueError("permutation image must be one-dimensional")
        _check_is_permutation(arr)
        arr.setflags(write=False)
        self._image = arr

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "Permutation":
        # Internal constructor for arrays already known to be permutations.
        p = object.__new__(cls)
        arr = np.asarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        p._image = arr
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 1:
            raise EmptyInputError("identity permutation needs n >= 1")
        return cls._trusted(np.arange(n, dtype=np.int64))

    @property
    def image(self) -> np.ndarray:
        """Read-only view of the image array."""
        return self._image

    def __len__(self) -> int:
        return self._image.shape[0]

    def __getitem__(self, i: int) -> int:
        return int(self._image[i])

    def __iter__(self):
        return iter(self._image.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._image.shape == other._image.shape and bool(
            np.all(self._image == other._image)
        )

    def __hash__(self) -> int:
        return hash(self._image.tobytes())

    def __repr__(self) -> str:
        return f"Permutation({self._image.tolist()!r})"


def _check_is_permutation(arr: np.ndarray) -> None:
    n = arr.shape[0]
    if n == 0:
        raise EmptyInputError("empty ranking")
    if np.unique(arr).shape[0] != n:
        raise DuplicateValueError("ranking contains duplicate values")
    if arr.min() != 0 or arr.max() != n - 1:
        raise OutOfRangeValueError(
            f"ranking values must cover 0..{n - 1} exactly, got "
            f"range [{arr.min()}, {arr.max()}]"
        )


def validate_ranking(values: Sequence[int] | np.ndarray) -> Permutation:
    """Parse user-supplied rank values into a :class:`Permutation`.

    Accepts a permutation of {0, ..., n-1} or of {1, ..., n}; the 1-based
    form is detected and shifted down.  Raises :class:`EmptyInputError`,
    :class:`DuplicateValueError`, or :class:`OutOfRangeValueError`.
    """
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise OutOfRangeValueError("ranking must be one-dimensional")
    if arr.shape[0] == 0:
        raise EmptyInputError("empty ranking")
    if not np.issubdtype(arr.dtype, np.integer):
        if np.issubdtype(arr.dtype, np.floating) and np.all(arr == np.floor(arr)):
            arr = arr.astype(np.int64)
        else:
            raise OutOfRangeValueError("ranking values must be integers")
    arr = arr.astype(np.int64)
    n = arr.shape[0]
    if np.unique(arr).shape[0] != n:
        raise DuplicateValueError("ranking contains duplicate values")
    if arr.min() == 1 and arr.max() == n:
        arr = arr - 1
    return Permutation(arr)


def rank_from_scores(
    scores: Sequence[float] | np.ndarray,
    *,
    descending: bool = True,
    ties: TiePolicy = TiePolicy.BREAK_BY_INPUT_ORDER,
) -> Permutation:
    """Turn a score vector into a ranking (rank 0 = best).

    With ``descending=True`` the highest score gets rank 0.  Ties are either
    rejected or broken in favour of the earlier input position.
    """
    arr = np.asarray(scores, dtype=np.float64)
    if arr.ndim != 1:
        raise OutOfRangeValueError("scores must be one-dimensional")
    n = arr.shape[0]
    if n == 0:
        raise EmptyInputError("empty score vector")
    if not np.all(np.isfinite(arr)):
        raise OutOfRangeValueError("scores must be finite")
    if ties is TiePolicy.REJECT and np.unique(arr).shape[0] != n:
        raise TiesPresentError("scores contain ties")
    key = -arr if descending else arr
    order = np.argsort(key, kind="stable")
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = np.arange(n, dtype=np.int64)
    return Permutation._trusted(ranks)


# ---------------------------------------------------------------------------
# group operations


def invert(p: Permutation) -> Permutation:
    """Inverse permutation: ``invert(p)[p[i]] == i``."""
    inv = np.empty(len(p), dtype=np.int64)
    inv[p.image] = np.arange(len(p), dtype=np.int64)
    return Permutation._trusted(inv)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Composition ``p after q``: ``compose(p, q)[i] == p[q[i]]``."""
    if len(p) != len(q):
        raise OutOfRangeValueError("cannot compose permutations of different sizes")
    return Permutation._trusted(p.image[q.image])


def relative_permutation(a: Permutation, b: Permutation) -> Permutation:
    """Reduce the ranking pair (a, b) to a single permutation.

    Relabel items by their rank under ``a``; the result maps each a-rank to
    the b-rank of the same item, i.e. ``compose(b, invert(a))``.  Any
    coefficient that depends only on rank pairs takes the same value on
    ``(a, b)`` as on ``(identity, relative_permutation(a, b))``.
    """
    return compose(b, invert(a))


# ---------------------------------------------------------------------------
# lexicographic index codec


def permutation_index(p: Permutation) -> int:
    """Lexicographic rank of ``p`` among all permutations of its size."""
    img = p.image.tolist()
    n = len(img)
    rank = 0
    for k in range(n):
        smaller = sum(1 for m in img[k + 1 :] if m < img[k])
        rank += smaller * math.factorial(n - 1 - k)
    return rank


def permutation_from_index(n: int, index: int) -> Permutation:
    """Inverse of :func:`permutation_index` (lexicographic unranking)."""
    if n < 1:
        raise EmptyInputError("need n >= 1")
    total = math.factorial(n)
    if not 0 <= index < total:
        raise OutOfRangeValueError(f"index {index} outside [0, {total})")
    remaining = list(range(n))
    image = []
    rem = index
    for k in range(n):
        radix = math.factorial(n - 1 - k)
        digit, rem = divmod(rem, radix)
        image.append(remaining.pop(digit))
    return Permutation._trusted(np.asarray(image, dtype=np.int64))


def _unrank_block(n: int, indices: np.ndarray) -> np.ndarray:
    """Vectorised lexicographic unranking; ``indices`` is a 1-d int64 array.

    Returns an ``(len(indices), n)`` int8 array, so callers must keep
    ``n <= 127``.  Practical use stays at n <= MAX_ENUMERATION_SIZE where
    factorials also fit comfortably in int64.
    """
    count = indices.shape[0]
    digits = np.empty((count, n), dtype=np.int64)
    rem = indices.astype(np.int64, copy=True)
    for k in range(n):
        radix = math.factorial(n - 1 - k)
        digits[:, k], rem = np.divmod(rem, radix)
    out = np.empty((count, n), dtype=np.int8)
    avail = np.ones((count, n), dtype=bool)
    rows = np.arange(count)
    for k in range(n):
        # Position of the (digit+1)-th still-available value in each row.
        seen = np.cumsum(avail, axis=1)
        hit = (seen == (digits[:, k] + 1)[:, None]) & avail
        pos = np.argmax(hit, axis=1)
        out[:, k] = pos
        avail[rows, pos] = False
    return out


def iter_permutation_blocks(
    n: int,
    *,
    block_size: int = DEFAULT_BLOCK_SIZE,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[np.ndarray]:
    """Yield all permutations of size ``n`` as stacked int8 rows.

    Rows appear in lexicographic order of their index; ``start``/``stop``
    select a sub-range of 0..n!-1 so the index space can be partitioned
    across workers.  Each yielded block is ``(rows, n)``.
    """
    if n < 1:
        raise EmptyInputError("need n >= 1")
    if n > MAX_ENUMERATION_SIZE:
        raise TooLargeError(
            f"exhaustive enumeration is limited to n <= {MAX_ENUMERATION_SIZE}"
        )
    if block_size < 1:
        raise OutOfRangeValueError("block_size must be positive")
    total = math.factorial(n)
    if stop is None:
        stop = total
    if not (0 <= start <= stop <= total):
        raise OutOfRangeValueError(f"invalid range [{start}, {stop}) for n={n}")
    for lo in range(start, stop, block_size):
        hi = min(lo + block_size, stop)
        yield _unrank_block(n, np.arange(lo, hi, dtype=np.int64))


def enumerate_permutations(n: int) -> Iterator[Permutation]:
    """All permutations of size ``n`` in lexicographic order.

    Raises :class:`TooLargeError` above ``MAX_ENUMERATION_SIZE``.
    """
    for block in iter_permutation_blocks(n):
        for row in block:
            yield Permutation._trusted(row.astype(np.int64))


# ---------------------------------------------------------------------------
# sampling


def sample_permutation(n: int, rng: np.random.Generator) -> Permutation:
    """One permutation of size ``n`` drawn uniformly at random."""
    if n < 1:
        raise EmptyInputError("need n >= 1")
    return Permutation._trusted(rng.permutation(n).astype(np.int64))


def sample_permutation_batch(
    n: int, count: int, rng: np.random.Generator
) -> np.ndarray:
    """``(count, n)`` int32 array whose rows are independent uniform draws."""
    if n < 1:
        raise EmptyInputError("need n >= 1")
    if count < 0:
        raise OutOfRangeValueError("count must be non-negative")
    base = np.tile(np.arange(n, dtype=np.int32), (count, 1))
    return rng.permuted(base, axis=1)
