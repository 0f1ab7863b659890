from __future__ import annotations

import numpy as np
import pytest

from rankcorr.density import (
    BANDWIDTH_SCALE,
    DEFAULT_BINS,
    HistogramSeries,
    gaussian_kde_curve,
    histogram_series,
    scaled_scott_bandwidth,
)
from rankcorr.errors import DegenerateLengthError, ZeroVarianceError

FIXED = np.array([0.3, -1.2, 0.7, 0.1, 2.4, -0.6, 1.1, 0.05, -0.9, 0.44])


class TestBandwidth:
    def test_frozen_value(self):
        assert scaled_scott_bandwidth(FIXED) == pytest.approx(
            0.2632925181460598, abs=1e-15
        )

    def test_formula(self):
        got = scaled_scott_bandwidth(FIXED)
        expected = BANDWIDTH_SCALE * FIXED.std(ddof=1) * FIXED.size ** (-0.2)
        assert got == expected

    def test_needs_two_samples(self):
        with pytest.raises(DegenerateLengthError):
            scaled_scott_bandwidth(np.array([1.0]))

    def test_constant_samples_rejected(self):
        with pytest.raises(ZeroVarianceError):
            scaled_scott_bandwidth(np.full(10, 0.5))


class TestKdeCurve:
    def test_single_point_kernel_is_a_gaussian(self):
        grid = np.linspace(-1, 1, 5)
        curve = gaussian_kde_curve(np.array([0.0]), grid, bandwidth=0.5)
        expected = np.exp(-0.5 * (grid / 0.5) ** 2) / (0.5 * np.sqrt(2 * np.pi))
        assert np.allclose(curve, expected, atol=1e-15, rtol=0)

    def test_curve_is_an_average_of_kernels(self):
        grid = np.linspace(-2, 3, 7)
        values = np.array([-0.5, 1.0])
        combined = gaussian_kde_curve(values, grid, 0.3)
        first = gaussian_kde_curve(values[:1], grid, 0.3)
        second = gaussian_kde_curve(values[1:], grid, 0.3)
        assert np.allclose(combined, (first + second) / 2, atol=1e-15, rtol=0)


class TestHistogramSeries:
    def test_densities_integrate_to_one(self, rng):
        values = rng.normal(size=500)
        series = histogram_series(values, "raw")
        widths = np.diff(series.bin_edges)
        assert float(np.sum(series.densities * widths)) == pytest.approx(
            1.0, abs=1e-9
        )

    def test_tiny_sample_still_integrates_to_one(self, rng):
        series = histogram_series(FIXED, "raw", bins=4)
        widths = np.diff(series.bin_edges)
        assert float(np.sum(series.densities * widths)) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_default_bin_count(self, rng):
        series = histogram_series(rng.normal(size=200), "raw")
        assert series.densities.size == DEFAULT_BINS
        assert series.bin_edges.size == DEFAULT_BINS + 1

    def test_kde_grid_extends_three_bandwidths(self):
        series = histogram_series(FIXED, "raw")
        h = series.bandwidth
        assert series.kde_x[0] == pytest.approx(FIXED.min() - 3 * h, abs=1e-12)
        assert series.kde_x[-1] == pytest.approx(FIXED.max() + 3 * h, abs=1e-12)

    def test_kde_mass_is_nearly_one(self, rng):
        values = rng.normal(size=400)
        series = histogram_series(values, "raw")
        trapezoid = getattr(np, "trapezoid", None) or np.trapz
        mass = float(trapezoid(series.kde_y, series.kde_x))
        # The grid cuts the kernels off at three bandwidths, which loses
        # under half a percent of the mass.
        assert 0.99 < mass <= 1.0 + 1e-9

    def test_summary_statistics(self):
        series = histogram_series(FIXED, "raw")
        assert series.n_samples == FIXED.size
        assert series.mean == pytest.approx(float(FIXED.mean()), abs=1e-15)
        assert series.std == pytest.approx(float(FIXED.std(ddof=1)), abs=1e-15)

    def test_to_dict_is_json_ready(self):
        import json

        series = histogram_series(FIXED, "raw")
        payload = series.to_dict()
        assert isinstance(payload["densities"], list)
        json.dumps(payload)
        restored = HistogramSeries(
            label=payload["label"],
            bin_edges=np.asarray(payload["bin_edges"]),
            densities=np.asarray(payload["densities"]),
            kde_x=np.asarray(payload["kde_x"]),
            kde_y=np.asarray(payload["kde_y"]),
            bandwidth=payload["bandwidth"],
            n_samples=payload["n_samples"],
            mean=payload["mean"],
            std=payload["std"],
        )
        assert np.array_equal(restored.densities, series.densities)
