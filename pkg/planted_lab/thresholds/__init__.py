from planted_lab.thresholds.recovery_thresholds import (
    Regime, ThresholdReport, TableRow, prem_thresholds, hwsbm_thresholds, table_thresholds, table_rows,
    select_regime,
)
from planted_lab.thresholds.asymptotics import (
    SuccessPrediction, asymptotic_success, failure_exponent, exact_success_probability,
)
from planted_lab.thresholds.induced_prem import InducedPrem, induced_prem, reduced_ell, coverage_size
from planted_lab.thresholds.union_bound import (
    OverlapRow, sufficient_gamma, finite_size_gamma_plus, union_bound_failure, seed_count_bound,
)

__all__ = [
    "Regime", "ThresholdReport", "TableRow", "prem_thresholds", "hwsbm_thresholds", "table_thresholds",
    "table_rows", "select_regime",
    "SuccessPrediction", "asymptotic_success", "failure_exponent", "exact_success_probability",
    "InducedPrem", "induced_prem", "reduced_ell", "coverage_size",
    "OverlapRow", "sufficient_gamma", "finite_size_gamma_plus", "union_bound_failure", "seed_count_bound",
]
