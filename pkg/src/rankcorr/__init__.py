"""Standard and top-weighted rank correlation with distribution-aware
standardization.

The package computes Spearman and Kendall coefficients, their weighted
(top-rank emphasizing) variants, and a piecewise-quadratic standardization
that restores zero expected value under random rankings.  Distribution
parameters come from exact enumeration (n <= 10), a bundled table, or a
Monte Carlo plus polynomial-regression pipeline for larger lengths.
"""

from __future__ import annotations

from .coefficients import (
    CoefficientConfig,
    CoefficientKind,
    WeightFunction,
    WeightKind,
    WeightScheme,
    combine_weights,
    evaluate,
    evaluate_identity_batch,
    eval_weight_function,
    kendall,
    spearman,
    standard_configs,
    standard_weight_functions,
    weight_values,
    weighted_kendall_fast,
    weighted_kendall_naive,
    weighted_spearman,
)
from .errors import RankCorrError
from .estimate import (
    N_EXACT,
    LengthTransform,
    RegressionModel,
    SampleStats,
    TrainingSettings,
    build_parameter_models,
    default_training_settings,
    derive_seed,
    exact_distribution_params,
    fit_polynomial,
    mc_estimate,
    mc_sample_values,
    select_degree,
    training_lengths,
    transform_length,
)
from .permutations import (
    MAX_ENUMERATION_SIZE,
    Permutation,
    TiePolicy,
    compose,
    enumerate_permutations,
    invert,
    iter_permutation_blocks,
    permutation_from_index,
    permutation_index,
    rank_from_scores,
    relative_permutation,
    sample_permutation,
    sample_permutation_batch,
    validate_ranking,
)
from .standardize import (
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
from .tables import (
    ParameterEntry,
    ParameterTable,
    Provenance,
    bundled_table,
    evaluate_model,
    load_table,
    lookup_params,
    parse_table,
    save_table,
    serialize_table,
    unweighted_params,
)

__version__ = "0.1.0"

__all__ = [
    "CoefficientConfig",
    "CoefficientKind",
    "DEFAULT_TOLERANCES",
    "DistributionParams",
    "LengthTransform",
    "MAX_ENUMERATION_SIZE",
    "N_EXACT",
    "ParameterEntry",
    "ParameterTable",
    "Permutation",
    "Provenance",
    "RankCorrError",
    "RegressionModel",
    "SampleStats",
    "Standardizer",
    "TiePolicy",
    "Tolerances",
    "TrainingSettings",
    "WeightFunction",
    "WeightKind",
    "WeightScheme",
    "build_parameter_models",
    "build_standardizer",
    "bundled_table",
    "combine_weights",
    "compose",
    "default_training_settings",
    "derive_seed",
    "determine_g0",
    "enumerate_permutations",
    "eval_weight_function",
    "evaluate",
    "evaluate_identity_batch",
    "evaluate_model",
    "exact_distribution_params",
    "fit_polynomial",
    "g1_from_g0",
    "invert",
    "is_flat_ratio",
    "iter_permutation_blocks",
    "kendall",
    "load_table",
    "lookup_params",
    "mc_estimate",
    "mc_sample_values",
    "parse_table",
    "permutation_from_index",
    "permutation_index",
    "rank_from_scores",
    "relative_permutation",
    "sample_permutation",
    "sample_permutation_batch",
    "save_table",
    "select_degree",
    "serialize_table",
    "spearman",
    "standard_configs",
    "standard_weight_functions",
    "standardized_coefficient",
    "training_lengths",
    "transform_length",
    "unweighted_params",
    "validate_ranking",
    "weight_values",
    "weighted_kendall_fast",
    "weighted_kendall_naive",
    "weighted_spearman",
]
