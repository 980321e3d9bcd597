from planted_lab.estimators.estimate import DEFAULT_ENUMERATION_BUDGET, Estimate, Method
from planted_lab.estimators.top_k import ml_prem
from planted_lab.estimators.exhaustive import ml_densest_exhaustive, revolving_door
from planted_lab.estimators.branch_and_bound import ml_densest_bnb
from planted_lab.estimators.oracle import oracle_best
from planted_lab.estimators.estimator_factory import EstimatorFactory, solve

__all__ = [
    "DEFAULT_ENUMERATION_BUDGET", "Estimate", "Method",
    "ml_prem", "ml_densest_exhaustive", "revolving_door", "ml_densest_bnb", "oracle_best",
    "EstimatorFactory", "solve",
]
