from __future__ import annotations

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rankcorr.coefficients import (
    CoefficientConfig,
    CoefficientKind,
    WeightFunction,
    WeightScheme,
    evaluate,
    evaluate_identity_batch,
)
from rankcorr.errors import (
    BoundConsistencyError,
    FlatDenominatorError,
    InfeasibleFlatBoundError,
    OutOfDomainError,
    OutOfRangeValueError,
    StandardizationError,
)
from rankcorr.estimate import exact_distribution_params
from rankcorr.standardize import (
    DEFAULT_TOLERANCES,
    DistributionParams,
    Standardizer,
    Tolerances,
    build_standardizer,
    determine_g0,
    g1_from_g0,
    is_flat_ratio,
    standardized_coefficient,
)
from rankcorr.permutations import Permutation, iter_permutation_blocks
from rankcorr.tables import bundled_table

# Exact null moments of the multiplicative 1/i^2 weighted Kendall at n = 3,
# frozen from an independent sweep over all six permutations.  The map
# built from them was frozen the same way.
KMI_N3 = DistributionParams(
    -0.18548801697067963, 0.7021316073770391, 0.24437226752246868
)
KMI_N3_G0 = 0.13933714642716089
KMI_N3_G2 = -1.7173440160385214
KMI_N3_H2 = 0.612404992058441

GRID = np.linspace(-1.0, 1.0, 2001)


def mean_under_params(s: Standardizer, params: DistributionParams) -> float:
    """E[g(Gamma)] written in terms of the null moments.

    The linear term drops (E[Gamma - gamma_bar] = 0) and the quadratic
    terms contribute their side's share of the variance.
    """
    return (
        s.g0
        + s.g2 * params.left_variance
        + s.h2 * (params.variance - params.left_variance)
    )


def assert_contract(s: Standardizer, params: DistributionParams) -> None:
    assert abs(s.apply(-1.0) + 1.0) < 1e-12
    assert abs(s.apply(1.0) - 1.0) < 1e-12
    assert abs(s.g0) <= 1.0 + 1e-12
    y = s.apply(GRID)
    assert np.all(np.diff(y) >= -1e-12)
    # Both branches share value g0 and slope g1 at the branch point, so
    # non-negative slope there plus at the endpoints pins monotonicity.
    assert s.derivative(-1.0) >= -1e-12
    assert s.g1 >= -1e-12
    assert s.derivative(1.0) >= -1e-12
    assert abs(mean_under_params(s, params)) < 1e-10


class TestDistributionParams:
    def test_valid(self):
        p = DistributionParams(-0.2, 0.5, 0.2)
        assert p.gamma_bar == -0.2

    @pytest.mark.parametrize(
        "gamma_bar,variance,left",
        [
            (1.0, 0.5, 0.2),
            (-1.0, 0.5, 0.2),
            (0.0, 0.0, 0.0),
            (0.0, 0.5, 0.0),
            (0.0, 0.5, 0.6),
            (0.0, -0.5, 0.2),
        ],
    )
    def test_invalid(self, gamma_bar, variance, left):
        with pytest.raises(OutOfRangeValueError):
            DistributionParams(gamma_bar, variance, left)

    def test_left_equal_to_variance_allowed(self):
        DistributionParams(0.0, 0.5, 0.5)

    def test_variance_above_feasible_bound_warns(self):
        with pytest.warns(RuntimeWarning):
            DistributionParams(0.9, 0.5, 0.2)


class TestFlatRatio:
    def test_symmetric_params_are_flat(self):
        assert is_flat_ratio(DistributionParams(0.0, 0.25, 0.125))

    def test_shifted_flat_ratio(self):
        assert is_flat_ratio(DistributionParams(0.4, 0.2, 0.14))

    def test_non_flat(self):
        assert not is_flat_ratio(KMI_N3)

    def test_g1_from_g0_refuses_flat(self):
        with pytest.raises(FlatDenominatorError):
            g1_from_g0(DistributionParams(0.0, 0.25, 0.125), 0.0)


class TestDetermineG0:
    def test_frozen_oracle(self):
        assert determine_g0(KMI_N3) == pytest.approx(KMI_N3_G0, abs=1e-12)

    def test_zero_when_admissible(self):
        # Gentle asymmetry keeps 0 inside the admissible interval.
        params = DistributionParams(-0.05, 0.3, 0.16)
        assert determine_g0(params) == 0.0

    def test_empty_interval_raises(self):
        with pytest.raises(BoundConsistencyError, match="empty admissible interval"):
            determine_g0(DistributionParams(0.2, 0.73, 0.4))

    def test_feasible_interior_case(self):
        # Variance 0.9 exceeds the feasible cap 0.75, which only noisy
        # estimates can produce, hence the warning; the interval arithmetic
        # still runs and lands strictly inside (0, 1).
        with pytest.warns(RuntimeWarning):
            params = DistributionParams(0.5, 0.9, 0.35)
        g0 = determine_g0(params)
        assert g0 == pytest.approx(0.35398230088495564, abs=1e-12)


class TestBuildStandardizer:
    def test_frozen_oracle_coefficients(self):
        s = build_standardizer(KMI_N3)
        assert s.g0 == pytest.approx(KMI_N3_G0, abs=1e-12)
        assert abs(s.g1) < 1e-12
        assert s.g2 == pytest.approx(KMI_N3_G2, abs=1e-12)
        assert s.h2 == pytest.approx(KMI_N3_H2, abs=1e-12)
        assert_contract(s, KMI_N3)

    def test_zero_mean_over_exact_atoms(self):
        config = CoefficientConfig(
            CoefficientKind.KENDALL,
            WeightFunction.inverse_quadratic(0),
            WeightScheme.MULTIPLICATIVE,
        )
        params = exact_distribution_params(config, 3)
        s = build_standardizer(params)
        atoms = np.concatenate(
            [evaluate_identity_batch(config, b) for b in iter_permutation_blocks(3)]
        )
        assert abs(s.apply(atoms).mean()) < 1e-12

    def test_symmetric_params_give_exact_identity(self):
        # Any unweighted length lands here: gamma_bar 0, left variance
        # exactly half.  The map must be the identity, bit for bit.
        s = build_standardizer(DistributionParams(0.0, 0.25, 0.125))
        assert (s.g0, s.g1, s.g2, s.h2) == (0.0, 1.0, 0.0, 0.0)
        x = np.linspace(-1, 1, 101)
        assert np.array_equal(s.apply(x), x)

    def test_two_point_distribution_gives_identity(self):
        # n = 2: variance saturates the feasible bound.
        s = build_standardizer(DistributionParams(0.0, 1.0, 0.5))
        assert (s.g0, s.g1, s.g2, s.h2) == (0.0, 1.0, 0.0, 0.0)

    def test_degenerate_flat_with_nonzero_mean_raises(self):
        with pytest.raises(InfeasibleFlatBoundError):
            build_standardizer(DistributionParams(0.5, 0.75, 0.5625))

    def test_infeasible_flat_intercept_raises(self):
        # Flat ratio, but the implied intercept escapes [-1, 1].
        with pytest.raises(InfeasibleFlatBoundError):
            build_standardizer(DistributionParams(0.5, 0.6, 0.45))

    def test_all_bundled_cells_build(self):
        for entry in bundled_table().entries:
            for n, params in sorted(entry.exact.items()):
                s = build_standardizer(params)
                assert_contract(s, params)

    @given(
        st.floats(-0.8, 0.8),
        st.floats(0.02, 0.9),
        st.floats(0.05, 0.95),
    )
    @settings(max_examples=200)
    def test_feasible_params_yield_contractual_maps(self, gb, v_frac, l_frac):
        variance = v_frac * (1.0 - gb * gb)
        params = DistributionParams(gb, variance, l_frac * variance)
        try:
            s = build_standardizer(params)
        except StandardizationError:
            # Not every moment triple admits a monotone quadratic map;
            # refusal is the contract for those.
            assume(False)
        assert_contract(s, params)


class TestApply:
    def test_scalar_and_array_forms(self):
        s = build_standardizer(KMI_N3)
        scalar = s.apply(0.25)
        assert isinstance(scalar, float)
        arr = s.apply(np.array([0.25, -0.5]))
        assert arr.shape == (2,)
        assert arr[0] == scalar

    def test_out_of_domain_raises(self):
        s = build_standardizer(KMI_N3)
        with pytest.raises(OutOfDomainError):
            s.apply(1.1)

    def test_tiny_overshoot_is_clipped(self):
        s = build_standardizer(KMI_N3)
        assert s.apply(1.0 + 1e-12) == pytest.approx(1.0, abs=1e-12)

    def test_strict_tolerances_reject_overshoot(self):
        s = build_standardizer(KMI_N3)
        with pytest.raises(OutOfDomainError):
            s.apply(1.0 + 1e-12, tolerances=Tolerances(domain_slack=1e-13))


class TestSerialization:
    def test_round_trip(self):
        s = build_standardizer(KMI_N3)
        restored = Standardizer.from_dict(s.to_dict())
        assert restored == s

    def test_missing_field(self):
        with pytest.raises(OutOfRangeValueError):
            Standardizer.from_dict({"gamma_bar": 0.0})


class TestStandardizedCoefficient:
    def test_composes_evaluate_and_apply(self):
        config = CoefficientConfig(
            CoefficientKind.KENDALL,
            WeightFunction.inverse_quadratic(0),
            WeightScheme.MULTIPLICATIVE,
        )
        a = Permutation([0, 2, 1])
        b = Permutation([1, 2, 0])
        s = build_standardizer(KMI_N3)
        expected = s.apply(evaluate(config, a, b))
        assert standardized_coefficient(config, a, b, KMI_N3) == pytest.approx(
            expected, abs=1e-15
        )

    def test_default_tolerances_are_shared(self):
        assert DEFAULT_TOLERANCES.boundary == 1e-12
