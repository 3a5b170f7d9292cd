"""Minkowski weighted k-means with relevance-aware seeding,
weight-stability feature selection, and the accompanying benchmark and
audit tooling."""

from .audit import (ConditionReport, NoiseCheck, SelectionConditionInputs,
                    WeightStackReport, audit_weight_stack,
                    denominator_limit_for_margin, is_noise_feature,
                    selection_condition, sensitivity_sum, stability_radius,
                    weight_denominator)
from .bench import (ClusteringBenchResult, SelectionBenchResult,
                    format_clustering_table, format_selection_table,
                    run_clustering_bench, run_selection_bench)
from .dataio import Dataset, load_csv, normalize_range, write_csv
from .engine import (KMeansResult, MWKResult, cluster_dispersions, kmeans_fit,
                     kmeanspp_seed, mwk_assign, mwk_fit, mwk_objective,
                     mwk_random_init, mwkpp_global_weights, mwkpp_init,
                     restart_best, weights_from_dispersions)
from .errors import DegenerateDataWarning, InputError, ParseError
from .metrics import (adjusted_rand_index, clustering_entropy,
                      contingency_table, feature_recovery)
from .minkowski import (feature_dispersion, minkowski_center,
                        minkowski_center_columns, minkowski_center_fast,
                        weighted_minkowski_distance)
from .rng import derive_seed, rng_from
from .selection import (COARSE_P_GRID, FINE_P_GRID, FeatureSelectionResult,
                        WeightStackEntry, collect_weights, fs_mwkpp,
                        median_aggregate, sfs_mwkpp, subsample,
                        subsample_size)
from .synth import (BENCH_CONFIG_NAMES, ConfigSpec, benchmark_suite, generate,
                    parse_config_name)

__version__ = "0.1.0"

__all__ = [
    "BENCH_CONFIG_NAMES", "COARSE_P_GRID", "FINE_P_GRID", "ConditionReport",
    "ConfigSpec", "ClusteringBenchResult", "Dataset", "DegenerateDataWarning",
    "FeatureSelectionResult", "InputError", "KMeansResult", "MWKResult",
    "NoiseCheck", "ParseError", "SelectionBenchResult",
    "SelectionConditionInputs", "WeightStackEntry", "WeightStackReport",
    "adjusted_rand_index", "audit_weight_stack", "benchmark_suite",
    "cluster_dispersions", "clustering_entropy", "collect_weights",
    "contingency_table", "denominator_limit_for_margin", "derive_seed",
    "feature_dispersion", "feature_recovery", "format_clustering_table",
    "format_selection_table", "fs_mwkpp", "generate", "is_noise_feature",
    "kmeans_fit", "kmeanspp_seed", "load_csv", "median_aggregate",
    "minkowski_center", "minkowski_center_columns", "minkowski_center_fast",
    "mwk_assign", "mwk_fit", "mwk_objective", "mwk_random_init",
    "mwkpp_global_weights", "mwkpp_init", "normalize_range",
    "parse_config_name", "restart_best", "rng_from", "run_clustering_bench",
    "run_selection_bench", "selection_condition", "sensitivity_sum",
    "sfs_mwkpp", "stability_radius", "subsample", "subsample_size",
    "weight_denominator", "weighted_minkowski_distance",
    "weights_from_dispersions", "write_csv",
]
