"""Histogram and kernel-density summaries of sampled coefficient values.

Used by the distribution subcommand to emit plot-ready data: a density
histogram plus a Gaussian kernel density curve whose bandwidth is Scott's
one-dimensional rule scaled by 0.4:

    h = 0.4 * s * N^(-1/5)

with ``s`` the sample standard deviation (N - 1 divisor).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import DegenerateLengthError, ZeroVarianceError

BANDWIDTH_SCALE = 0.4

DEFAULT_BINS = 50

_CURVE_POINTS = 401


def scaled_scott_bandwidth(values: np.ndarray) -> float:
    if values.size < 2:
        raise DegenerateLengthError("bandwidth needs at least two samples")
    sd = float(values.std(ddof=1))
    if sd == 0.0:
        raise ZeroVarianceError("all samples identical; no density to estimate")
    return BANDWIDTH_SCALE * sd * values.size ** (-0.2)


def gaussian_kde_curve(
    values: np.ndarray, grid: np.ndarray, bandwidth: float
) -> np.ndarray:
    """Gaussian kernel density of ``values`` evaluated on ``grid``."""
    z = (grid[:, None] - values[None, :]) / bandwidth
    kernels = np.exp(-0.5 * z * z)
    return kernels.mean(axis=1) / (bandwidth * np.sqrt(2.0 * np.pi))


@dataclass(frozen=True)
class HistogramSeries:
    """Plot-ready density summary of one batch of samples."""

    label: str
    bin_edges: np.ndarray
    densities: np.ndarray
    kde_x: np.ndarray
    kde_y: np.ndarray
    bandwidth: float
    n_samples: int
    mean: float
    std: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "n_samples": self.n_samples,
            "mean": self.mean,
            "std": self.std,
            "bandwidth": self.bandwidth,
            "bin_edges": self.bin_edges.tolist(),
            "densities": self.densities.tolist(),
            "kde_x": self.kde_x.tolist(),
            "kde_y": self.kde_y.tolist(),
        }


def histogram_series(
    values: np.ndarray, label: str, *, bins: int = DEFAULT_BINS
) -> HistogramSeries:
    """Density histogram plus KDE curve for one sample batch.

    The histogram uses equal-width bins over the observed range, so the
    densities integrate to one.  The KDE grid extends three bandwidths
    past the data on both sides.
    """
    values = np.asarray(values, dtype=np.float64)
    bandwidth = scaled_scott_bandwidth(values)
    lo, hi = float(values.min()), float(values.max())
    densities, edges = np.histogram(values, bins=bins, range=(lo, hi), density=True)
    grid = np.linspace(lo - 3.0 * bandwidth, hi + 3.0 * bandwidth, _CURVE_POINTS)
    curve = gaussian_kde_curve(values, grid, bandwidth)
    return HistogramSeries(
        label=label,
        bin_edges=edges,
        densities=densities,
        kde_x=grid,
        kde_y=curve,
        bandwidth=bandwidth,
        n_samples=int(values.size),
        mean=float(values.mean()),
        std=float(values.std(ddof=1)),
    )
