"""Правила отложения, исполнитель каскада и селектор."""

from src.deferral.cascade import (
    CascadeBatchResult,
    CascadeConfig,
    CascadeMode,
    CascadeResult,
    run_cascade,
    run_cascade_many,
)
from src.deferral.rules import DEPLOYABLE_KINDS, REQUIRED_INPUTS, DeferralRule, InputName, RuleKind, StageInputs
from src.deferral.scores import (
    score_bayes,
    score_confidence,
    score_entropy,
    score_onehot_oracle,
    score_posthoc,
    score_prob_oracle,
    score_random,
    score_relative_confidence,
)
from src.deferral.selector import optimal_selector, optimal_selector_many, selector_error_probs

__all__ = [
    "DEPLOYABLE_KINDS",
    "REQUIRED_INPUTS",
    "CascadeBatchResult",
    "CascadeConfig",
    "CascadeMode",
    "CascadeResult",
    "DeferralRule",
    "InputName",
    "RuleKind",
    "StageInputs",
    "optimal_selector",
    "optimal_selector_many",
    "run_cascade",
    "run_cascade_many",
    "score_bayes",
    "score_confidence",
    "score_entropy",
    "score_onehot_oracle",
    "score_posthoc",
    "score_prob_oracle",
    "score_random",
    "score_relative_confidence",
    "selector_error_probs",
]
