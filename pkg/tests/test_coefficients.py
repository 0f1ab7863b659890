from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

import oracles
from rankcorr.coefficients import (
    CoefficientConfig,
    CoefficientKind,
    WeightFunction,
    WeightKind,
    WeightScheme,
    combine_weights,
    eval_weight_function,
    evaluate,
    evaluate_identity_batch,
    kendall,
    spearman,
    standard_configs,
    standard_weight_functions,
    weight_values,
    weighted_kendall_fast,
    weighted_kendall_naive,
    weighted_spearman,
)
from rankcorr.errors import (
    DegenerateLengthError,
    InvalidPositionError,
    LengthMismatchError,
    OutOfRangeValueError,
)
from rankcorr.permutations import (
    Permutation,
    enumerate_permutations,
    relative_permutation,
    sample_permutation,
)

pair_strategy = st.integers(2, 30).flatmap(
    lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))
)


def _config_fn_label(config: CoefficientConfig) -> tuple[str, int, str]:
    return (
        config.weight_function.kind.value,
        config.weight_function.n0,
        config.scheme.value,
    )


class TestWeightFunctions:
    def test_harmonic_values(self):
        fn = WeightFunction.harmonic()
        assert eval_weight_function(fn, 1) == 1.0
        assert eval_weight_function(fn, 2) == 0.5
        assert eval_weight_function(fn, 4) == 0.25

    def test_inverse_quadratic_values(self):
        assert eval_weight_function(WeightFunction.inverse_quadratic(0), 2) == 0.25
        assert eval_weight_function(WeightFunction.inverse_quadratic(1), 1) == 0.25
        assert eval_weight_function(WeightFunction.inverse_quadratic(2), 3) == 1 / 25

    def test_constant(self):
        assert eval_weight_function(WeightFunction.constant(), 17) == 1.0

    def test_positions_are_one_based(self):
        with pytest.raises(InvalidPositionError):
            eval_weight_function(WeightFunction.harmonic(), 0)

    def test_negative_shift_rejected(self):
        with pytest.raises(OutOfRangeValueError):
            WeightFunction(WeightKind.INVERSE_QUADRATIC, -1)

    def test_shift_only_for_inverse_quadratic(self):
        with pytest.raises(OutOfRangeValueError):
            WeightFunction(WeightKind.HARMONIC, 1)

    def test_weight_values_match_pointwise(self):
        for fn in standard_weight_functions():
            vec = weight_values(fn, 9)
            expected = [eval_weight_function(fn, i) for i in range(1, 10)]
            assert np.allclose(vec, expected, rtol=0, atol=0)

    def test_describe(self):
        assert WeightFunction.harmonic().describe() == "1/i"
        assert WeightFunction.inverse_quadratic(0).describe() == "1/i^2"
        assert WeightFunction.inverse_quadratic(2).describe() == "1/(i+2)^2"


class TestConfig:
    def test_standard_configs_complete(self):
        configs = standard_configs()
        assert len(configs) == 16
        assert len(set(configs)) == 16
        assert all(c.weighted for c in configs)

    def test_partial_weighting_rejected(self):
        with pytest.raises(OutOfRangeValueError):
            CoefficientConfig(CoefficientKind.SPEARMAN, WeightFunction.harmonic(), None)

    def test_describe(self):
        c = CoefficientConfig(
            CoefficientKind.KENDALL, WeightFunction.harmonic(), WeightScheme.ADDITIVE
        )
        assert c.describe() == "kendall additive 1/i"
        assert CoefficientConfig(CoefficientKind.SPEARMAN).describe() == "spearman"


class TestCombineWeights:
    def test_additive_small_case(self):
        a = Permutation([0, 1, 2])
        b = Permutation([1, 0, 2])
        w = combine_weights(WeightFunction.harmonic(), a, b, WeightScheme.ADDITIVE)
        raw = np.array([1 + 0.5, 0.5 + 1, 1 / 3 + 1 / 3])
        assert np.allclose(w, raw / raw.sum(), rtol=0, atol=1e-15)

    def test_multiplicative_small_case(self):
        a = Permutation([0, 1, 2])
        b = Permutation([1, 0, 2])
        w = combine_weights(
            WeightFunction.harmonic(), a, b, WeightScheme.MULTIPLICATIVE
        )
        raw = np.array([1 * 0.5, 0.5 * 1, 1 / 9])
        assert np.allclose(w, raw / raw.sum(), rtol=0, atol=1e-15)

    @given(pair_strategy)
    def test_weights_sum_to_one(self, images):
        a, b = Permutation(images[0]), Permutation(images[1])
        for fn in standard_weight_functions():
            for scheme in WeightScheme:
                w = combine_weights(fn, a, b, scheme)
                assert w.min() > 0
                assert abs(w.sum() - 1.0) < 1e-12


class TestUnweighted:
    def test_identity_pair(self):
        p = Permutation([3, 0, 2, 1])
        assert spearman(p, p) == 1.0
        assert kendall(p, p) == 1.0

    def test_reversal(self):
        n = 6
        a = Permutation.identity(n)
        b = Permutation(np.arange(n)[::-1])
        assert spearman(a, b) == -1.0
        assert kendall(a, b) == -1.0

    def test_known_small_case(self):
        a = Permutation([0, 1, 2])
        b = Permutation([1, 0, 2])
        assert spearman(a, b) == pytest.approx(0.5, abs=1e-15)
        assert kendall(a, b) == pytest.approx(1 / 3, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            spearman(Permutation([0, 1]), Permutation([0, 1, 2]))
        with pytest.raises(LengthMismatchError):
            kendall(Permutation([0, 1]), Permutation([0, 1, 2]))

    def test_single_item_degenerate(self):
        one = Permutation([0])
        with pytest.raises(DegenerateLengthError):
            spearman(one, one)
        with pytest.raises(DegenerateLengthError):
            kendall(one, one)

    def test_matches_scipy(self, rng):
        for _ in range(25):
            n = int(rng.integers(3, 60))
            a = sample_permutation(n, rng)
            b = sample_permutation(n, rng)
            rho_ref = stats.spearmanr(a.image, b.image).statistic
            tau_ref = stats.kendalltau(a.image, b.image).statistic
            assert spearman(a, b) == pytest.approx(rho_ref, abs=1e-12)
            assert kendall(a, b) == pytest.approx(tau_ref, abs=1e-12)

    @given(pair_strategy)
    def test_antisymmetric_under_reversal(self, images):
        a, b = Permutation(images[0]), Permutation(images[1])
        n = len(a)
        b_rev = Permutation(n - 1 - b.image)
        assert spearman(a, b_rev) == pytest.approx(-spearman(a, b), abs=1e-12)
        assert kendall(a, b_rev) == pytest.approx(-kendall(a, b), abs=1e-12)


class TestWeightedSpearman:
    def test_identity_and_reversal_are_extremes(self, weighted_configs):
        n = 8
        ident = Permutation.identity(n)
        rev = Permutation(np.arange(n)[::-1])
        for config in weighted_configs:
            assert evaluate(config, ident, ident) == pytest.approx(1.0, abs=1e-12)
            assert evaluate(config, ident, rev) == pytest.approx(-1.0, abs=1e-12)

    def test_matches_double_sum_reference(self, rng, weighted_configs):
        spearman_configs = [
            c for c in weighted_configs if c.kind is CoefficientKind.SPEARMAN
        ]
        for _ in range(20):
            n = int(rng.integers(2, 40))
            a = sample_permutation(n, rng)
            b = sample_permutation(n, rng)
            for config in spearman_configs:
                kind, n0, scheme = _config_fn_label(config)
                ref = oracles.weighted_spearman_reference(
                    a.image.tolist(), b.image.tolist(), kind, n0, scheme
                )
                got = weighted_spearman(a, b, config.weight_function, config.scheme)
                assert got == pytest.approx(ref, abs=1e-13)

    def test_constant_weight_reduces_to_unweighted(self, rng):
        fn = WeightFunction.constant()
        for _ in range(10):
            n = int(rng.integers(3, 30))
            a = sample_permutation(n, rng)
            b = sample_permutation(n, rng)
            for scheme in WeightScheme:
                assert weighted_spearman(a, b, fn, scheme) == pytest.approx(
                    spearman(a, b), abs=1e-12
                )


class TestWeightedKendall:
    def test_fast_matches_naive_exhaustive_n5(self, weighted_configs):
        kendall_configs = [
            c for c in weighted_configs if c.kind is CoefficientKind.KENDALL
        ]
        ident = Permutation.identity(5)
        for sigma in enumerate_permutations(5):
            for config in kendall_configs:
                fast = weighted_kendall_fast(
                    ident, sigma, config.weight_function, config.scheme
                )
                naive = weighted_kendall_naive(
                    ident, sigma, config.weight_function, config.scheme
                )
                assert abs(fast - naive) < 1e-12

    def test_fast_matches_naive_random(self, rng, weighted_configs):
        kendall_configs = [
            c for c in weighted_configs if c.kind is CoefficientKind.KENDALL
        ]
        for _ in range(50):
            n = int(rng.integers(10, 200))
            a = sample_permutation(n, rng)
            b = sample_permutation(n, rng)
            for config in kendall_configs:
                fast = weighted_kendall_fast(
                    a, b, config.weight_function, config.scheme
                )
                naive = weighted_kendall_naive(
                    a, b, config.weight_function, config.scheme
                )
                assert abs(fast - naive) < 1e-12

    def test_matches_double_sum_reference(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 15))
            a = sample_permutation(n, rng)
            b = sample_permutation(n, rng)
            for fn in standard_weight_functions():
                for scheme in WeightScheme:
                    ref = oracles.weighted_kendall_reference(
                        a.image.tolist(),
                        b.image.tolist(),
                        fn.kind.value,
                        fn.n0,
                        scheme.value,
                    )
                    assert weighted_kendall_fast(a, b, fn, scheme) == pytest.approx(
                        ref, abs=1e-13
                    )

    def test_constant_weight_reduces_to_unweighted(self, rng):
        fn = WeightFunction.constant()
        for _ in range(10):
            n = int(rng.integers(3, 30))
            a = sample_permutation(n, rng)
            b = sample_permutation(n, rng)
            for scheme in WeightScheme:
                assert weighted_kendall_fast(a, b, fn, scheme) == pytest.approx(
                    kendall(a, b), abs=1e-12
                )


class TestEvaluate:
    @given(pair_strategy)
    @settings(max_examples=60)
    def test_duality_with_relative_permutation(self, images):
        a, b = Permutation(images[0]), Permutation(images[1])
        sigma = relative_permutation(a, b)
        ident = Permutation.identity(len(a))
        configs = (
            CoefficientConfig(CoefficientKind.SPEARMAN),
            CoefficientConfig(CoefficientKind.KENDALL),
        ) + standard_configs()
        for config in configs:
            direct = evaluate(config, a, b)
            reduced = evaluate(config, ident, sigma)
            assert abs(direct - reduced) < 1e-12

    @given(pair_strategy)
    @settings(max_examples=60)
    def test_range_bound(self, images):
        a, b = Permutation(images[0]), Permutation(images[1])
        for config in standard_configs():
            assert abs(evaluate(config, a, b)) <= 1.0 + 1e-12


class TestIdentityBatch:
    def test_matches_per_pair_evaluation(self, rng, all_configs):
        ident_cache = {}
        for config in all_configs:
            n = int(rng.integers(3, 30))
            ident = ident_cache.setdefault(n, Permutation.identity(n))
            batch = np.stack(
                [sample_permutation(n, rng).image for _ in range(16)]
            )
            values = evaluate_identity_batch(config, batch)
            for row, value in zip(batch, values):
                expected = evaluate(config, ident, Permutation(row))
                assert value == pytest.approx(expected, abs=1e-12)

    def test_merge_path_above_pairwise_limit(self, rng):
        # n = 600 exceeds the pairwise kernel's cap, exercising the per-row
        # merge fallback for both plain and weighted variants.
        n = 600
        ident = Permutation.identity(n)
        batch = np.stack([sample_permutation(n, rng).image for _ in range(3)])
        for config in (
            CoefficientConfig(CoefficientKind.KENDALL),
            CoefficientConfig(
                CoefficientKind.KENDALL,
                WeightFunction.harmonic(),
                WeightScheme.ADDITIVE,
            ),
        ):
            values = evaluate_identity_batch(config, batch)
            for row, value in zip(batch, values):
                expected = evaluate(config, ident, Permutation(row))
                assert value == pytest.approx(expected, abs=1e-12)

    def test_empty_batch(self):
        config = CoefficientConfig(CoefficientKind.SPEARMAN)
        out = evaluate_identity_batch(config, np.zeros((0, 5), dtype=np.int64))
        assert out.shape == (0,)

    def test_rejects_one_dimensional_input(self):
        config = CoefficientConfig(CoefficientKind.SPEARMAN)
        with pytest.raises(OutOfRangeValueError):
            evaluate_identity_batch(config, np.arange(5))
