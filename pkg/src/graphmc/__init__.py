"""Community detection plus binary matrix completion with two graph helpers.

Simulation of the two generative models (basic, and with atypical movies),
maximum-likelihood recovery, closed-form sample-probability thresholds,
Chernoff/union error bounds, and a Monte Carlo sweep harness.
"""

from .bounds import (PairwiseErrorEstimate, TypeClassOverlap, empirical_pairwise_error,
                     overlap_signature, pairwise_error_bound_model1,
                     pairwise_error_bound_model2, type_class_count, union_bound_total,
                     wilson_interval)
from .estimators import exact_recovery, ml_exhaustive, ml_local_search
from .experiments import (ConfigError, ExperimentConfig, ExperimentResult,
                          InfeasibleParameterError, PointResult, run_point, run_sweep,
                          solve_graph_params)
from .io import read_instance, write_instance
from .likelihood import (LikelihoodConstants, SufficientStats, canonicalize, flip,
                         flip_genres_and_typicality, flip_users_and_typicality,
                         likelihood_constants, likelihood_difference,
                         neg_log_likelihood, orbit_representative, sufficient_stats)
from .model import (ERASED, GroundTruth, ModelKind, ModelParams, Observation, Seed,
                    build_nominal_matrix, generate_instance, personalize_and_sample,
                    sample_ground_truth, sample_observation, sample_sbm)
from .thresholds import (Regime, ThresholdReport, classify_regime, graph_quality, h,
                         model2_achievable_p, model2_converse_p, msp_kink_i1,
                         msp_model1, nu, tau)

__version__ = "0.1.0"
