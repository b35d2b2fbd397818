"""Риски, кривые отложения, калибровка и переборные оракулы."""

from src.evaluation.calibration import CalibrationBucket, CalibrationReport, calibration_report
from src.evaluation.costs import relative_inference_cost
from src.evaluation.curves import (
    DEFAULT_RATES,
    CurvePoint,
    DeferralCurve,
    ThresholdMode,
    accuracy_at_cost,
    cascade_curve,
    deferral_curve,
)
from src.evaluation.identity import IdentityCheck, accuracy_identity_check
from src.evaluation.oracles import enumerate_optimal_rule, enumerate_optimal_selector, expected_selector_risk
from src.evaluation.risk import (
    SupportTable,
    TwoModelOutputs,
    cascade_risk,
    excess_risk,
    expected_cascade_risk,
    support_decisions,
    support_table,
    two_model_outputs,
)

__all__ = [
    "DEFAULT_RATES",
    "CalibrationBucket",
    "CalibrationReport",
    "CurvePoint",
    "DeferralCurve",
    "IdentityCheck",
    "SupportTable",
    "ThresholdMode",
    "TwoModelOutputs",
    "accuracy_at_cost",
    "accuracy_identity_check",
    "calibration_report",
    "cascade_curve",
    "cascade_risk",
    "deferral_curve",
    "enumerate_optimal_rule",
    "enumerate_optimal_selector",
    "excess_risk",
    "expected_cascade_risk",
    "expected_selector_risk",
    "relative_inference_cost",
    "support_decisions",
    "support_table",
    "two_model_outputs",
]
