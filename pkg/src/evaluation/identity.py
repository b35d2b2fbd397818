"""Тождество точности: A(r) = P(h1 верна) + E[r·β]."""

from dataclasses import dataclass

import numpy as np

from src.deferral.rules import DeferralRule
from src.evaluation.risk import support_table, x_measurable_decisions
from src.models.classifiers import Classifier
from src.worlds.base import SyntheticWorld

IDENTITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class IdentityCheck:
    """Результат сравнения двух правил."""

    holds: bool
    beta_gap: float
    accuracy_gap: float
    accuracy_a: float
    accuracy_b: float
    residual: float

    @property
    def equal_beta(self) -> bool:  # noqa: D102
        return abs(self.beta_gap) <= IDENTITY_TOLERANCE

    @property
    def equal_accuracy(self) -> bool:  # noqa: D102
        return abs(self.accuracy_gap) <= IDENTITY_TOLERANCE


def accuracy_identity_check(  # noqa: PLR0913
    world: SyntheticWorld,
    model1: Classifier,
    model2: Classifier,
    rule_a: DeferralRule | np.ndarray,
    rule_b: DeferralRule | np.ndarray,
    threshold_a: float = 0.0,
    threshold_b: float = 0.0,
) -> IdentityCheck:
    """Сравнить E[r_A·β] − E[r_B·β] с разностью точностей каскадов.

    Точности считаются отдельно, как Σ Pr(x)·η_{h(x)}(x) для итогового
    предсказания, а не через тождество. ``residual`` - расхождение разности
    точностей и разности E[r·β]; ``holds`` - совпадают ли ответы на вопросы
    «равны ли E[r·β]» и «равны ли точности».
    """
    table = support_table(world, model1, model2)
    beta = table.beta()
    decisions_a = x_measurable_decisions(table, rule_a, threshold_a)
    decisions_b = x_measurable_decisions(table, rule_b, threshold_b)

    def cascade_accuracy(decisions: np.ndarray) -> float:
        predictions = np.where(decisions, table.h2, table.h1)
        return float(np.sum(table.marginals * table.eta_at(predictions)))

    accuracy_a = cascade_accuracy(decisions_a)
    accuracy_b = cascade_accuracy(decisions_b)
    beta_gap = float(np.sum(table.marginals * decisions_a * beta) - np.sum(table.marginals * decisions_b * beta))
    accuracy_gap = accuracy_a - accuracy_b

    equal_beta = abs(beta_gap) <= IDENTITY_TOLERANCE
    equal_accuracy = abs(accuracy_gap) <= IDENTITY_TOLERANCE
    return IdentityCheck(
        holds=equal_beta == equal_accuracy,
        beta_gap=beta_gap,
        accuracy_gap=accuracy_gap,
        accuracy_a=accuracy_a,
        accuracy_b=accuracy_b,
        residual=abs(accuracy_gap - beta_gap),
    )
