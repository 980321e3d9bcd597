from planted_lab.experiments.experiment_config import ExperimentConfig
from planted_lab.experiments.recovery_curve import (
    CURVE_COLUMNS, CurveRow, RecoveryCurve, ThresholdCrossing, wilson_interval, estimate_threshold,
)
from planted_lab.experiments.exponent import ExponentFit, FailureCell, exponent_fit, expected_exponent
from planted_lab.experiments.trials import TrialCount, run_trials, sweep, measure_failures
from planted_lab.experiments.extreme_value import (
    FtgReport, KsSelfTest, normalizing_constants, sample_gaussian_maxima, ftg_check, ks_self_test,
)
from planted_lab.experiments.reduction_check import ReductionConsistency, reduction_consistency

__all__ = [
    "ExperimentConfig",
    "CURVE_COLUMNS", "CurveRow", "RecoveryCurve", "ThresholdCrossing", "wilson_interval", "estimate_threshold",
    "ExponentFit", "FailureCell", "exponent_fit", "expected_exponent",
    "TrialCount", "run_trials", "sweep", "measure_failures",
    "FtgReport", "KsSelfTest", "normalizing_constants", "sample_gaussian_maxima", "ftg_check", "ks_self_test",
    "ReductionConsistency", "reduction_consistency",
]
