"""Slow, independent reference implementations used only by the tests.

Everything here is written from the definitions with plain Python loops
(or one obvious numpy call), deliberately sharing no code path with the
package internals it checks.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def weight_value(kind: str, n0: int, position: int) -> float:
    """f at a 1-based position; kind is 'harmonic', 'inverse_quadratic',
    or 'constant'."""
    if kind == "harmonic":
        return 1.0 / position
    if kind == "inverse_quadratic":
        return 1.0 / (position + n0) ** 2
    return 1.0


def pair_weights(kind: str, n0: int, a, b, scheme: str) -> list[float]:
    """Normalized per-item weights for rank vectors a, b (0-based)."""
    raw = []
    for ra, rb in zip(a, b):
        fa = weight_value(kind, n0, ra + 1)
        fb = weight_value(kind, n0, rb + 1)
        raw.append(fa + fb if scheme == "additive" else fa * fb)
    total = sum(raw)
    return [r / total for r in raw]


def weighted_spearman_reference(a, b, kind: str, n0: int, scheme: str) -> float:
    """Weighted Pearson correlation of the rank vectors, written as
    explicit weighted moments."""
    w = pair_weights(kind, n0, a, b, scheme)
    ma = sum(wi * ai for wi, ai in zip(w, a))
    mb = sum(wi * bi for wi, bi in zip(w, b))
    cov = sum(wi * (ai - ma) * (bi - mb) for wi, ai, bi in zip(w, a, b))
    va = sum(wi * (ai - ma) ** 2 for wi, ai in zip(w, a))
    vb = sum(wi * (bi - mb) ** 2 for wi, bi in zip(w, b))
    return cov / math.sqrt(va * vb)


def weighted_kendall_reference(a, b, kind: str, n0: int, scheme: str) -> float:
    """Weighted Kendall from the ordered-pair double sum."""
    w = pair_weights(kind, n0, a, b, scheme)
    n = len(a)
    num = 0.0
    den = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            sa = (a[j] > a[i]) - (a[j] < a[i])
            sb = (b[j] > b[i]) - (b[j] < b[i])
            num += w[i] * w[j] * sa * sb
            den += w[i] * w[j]
    return num / den


def spearman_reference(a, b) -> float:
    n = len(a)
    ssd = sum((ai - bi) ** 2 for ai, bi in zip(a, b))
    return 1.0 - 6.0 * ssd / (n * (n * n - 1))


def kendall_reference(a, b) -> float:
    n = len(a)
    s = 0
    for i in range(n):
        for j in range(i + 1, n):
            sa = (a[j] > a[i]) - (a[j] < a[i])
            sb = (b[j] > b[i]) - (b[j] < b[i])
            s += sa * sb
    return 2.0 * s / (n * (n - 1))


def exact_moments_brute(value_fn, n: int) -> tuple[float, float, float]:
    """(mean, variance, left variance) of value_fn(sigma) over every
    permutation sigma of range(n), via itertools."""
    values = [value_fn(list(p)) for p in itertools.permutations(range(n))]
    arr = np.asarray(values, dtype=np.float64)
    mean = float(arr.mean())
    sq = (arr - mean) ** 2
    variance = float(sq.mean())
    left = float(sq[arr < mean].sum() / arr.size)
    return mean, variance, left


def spearman_null_variance(n: int) -> float:
    return 1.0 / (n - 1)


def kendall_null_variance(n: int) -> float:
    return 2.0 * (2 * n + 5) / (9.0 * n * (n - 1))
