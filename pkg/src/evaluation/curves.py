"""Кривые отложения: точность и риск в зависимости от доли отложенных примеров."""

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
import pandas as pd

from src.config import logger
from src.core.dataset import Dataset
from src.deferral.cascade import CascadeConfig, CascadeMode, run_cascade_many
from src.deferral.rules import DeferralRule, StageInputs
from src.evaluation.costs import relative_inference_cost
from src.evaluation.risk import TwoModelOutputs, rule_inputs, two_model_outputs
from src.models.classifiers import Classifier
from src.shared.errors import ConfigurationError
from src.storage.columns import CsvHeaders
from src.worlds.base import SyntheticWorld

DEFAULT_RATES = tuple(np.round(np.linspace(0.0, 1.0, 21), 10))


class ThresholdMode(StrEnum):
    """Как выбираются пороги кривой."""

    QUANTILE = "quantile"
    FIXED = "fixed"


@dataclass(frozen=True)
class CurvePoint:
    """Точка кривой; порог - в единицах пользователя (для K > 2 - по стадиям)."""

    deferral_rate: float
    accuracy: float
    risk: float
    threshold: tuple[float, ...]
    relative_cost: float = float("nan")
    invocation_rates: tuple[float, ...] = ()


@dataclass
class DeferralCurve:
    """Упорядоченные по доле отложения точки и метаданные."""

    rule: str
    scenario: str = ""
    seed: int = 0
    points: list[CurvePoint] = field(default_factory=list)
    split: str = "test"

    def __len__(self) -> int:  # noqa: D105
        return len(self.points)

    @property
    def rates(self) -> np.ndarray:  # noqa: D102
        return np.array([p.deferral_rate for p in self.points])

    @property
    def accuracies(self) -> np.ndarray:  # noqa: D102
        return np.array([p.accuracy for p in self.points])

    @property
    def risks(self) -> np.ndarray:  # noqa: D102
        return np.array([p.risk for p in self.points])

    @property
    def relative_costs(self) -> np.ndarray:  # noqa: D102
        return np.array([p.relative_cost for p in self.points])

    def accuracy_at_rate(self, rate: float) -> float:
        """Линейная интерполяция точности по доле отложения."""
        return float(np.interp(rate, self.rates, self.accuracies))

    def to_frame(self) -> pd.DataFrame:
        """Таблица в формате curves.csv."""
        rows = [
            {
                "rule": self.rule,
                "scenario": self.scenario,
                "seed": self.seed,
                "threshold": "|".join(repr(float(t)) for t in p.threshold),
                "deferral_rate": p.deferral_rate,
                "accuracy": p.accuracy,
                "risk": p.risk,
                "relative_cost": p.relative_cost,
            }
            for p in self.points
        ]
        return pd.DataFrame(rows, columns=CsvHeaders.CURVES)


def _check_rates(rates: Sequence[float]) -> np.ndarray:
    grid = np.asarray(rates, dtype=np.float64)
    if grid.size == 0:
        msg = "сетка долей отложения пуста"
        raise ConfigurationError(msg)
    if np.any(grid < 0) or np.any(grid > 1) or np.any(np.diff(grid) < 0):
        msg = "доли отложения должны лежать в [0, 1] и быть отсортированы"
        raise ConfigurationError(msg)
    return grid


def _two_model_relative_cost(rate: float, inference_costs: Sequence[float] | None) -> float:
    if inference_costs is None:
        return float("nan")
    return relative_inference_cost([1.0, rate], inference_costs)


def deferral_curve(  # noqa: PLR0913
    ds: Dataset,
    model1: Classifier,
    model2: Classifier,
    rule: DeferralRule,
    rates: Sequence[float] = DEFAULT_RATES,
    cost: float = 0.0,
    *,
    mode: ThresholdMode = ThresholdMode.QUANTILE,
    thresholds: Sequence[float] | None = None,
    world: SyntheticWorld | None = None,
    inference_costs: Sequence[float] | None = None,
    scenario: str = "",
    seed: int = 0,
    outputs: TwoModelOutputs | None = None,
) -> DeferralCurve:
    """Кривая каскада из двух моделей.

    В режиме quantile для доли α откладываются floor(α·n) примеров с
    наибольшей оценкой (равные оценки - в порядке примеров). В режиме fixed
    кривая строится по сетке порогов пользователя.
    """
    outputs = outputs or two_model_outputs(ds, model1, model2)
    n = len(outputs)
    scores = rule.score(rule_inputs(outputs, world))
    benefit = outputs.correct2 - outputs.correct1
    base_accuracy = float(outputs.correct1.mean())
    curve = DeferralCurve(rule=rule.name, scenario=scenario, seed=seed)

    if ThresholdMode(mode) is ThresholdMode.FIXED:
        if not thresholds:
            msg = "режим fixed требует непустой сетки порогов"
            raise ConfigurationError(msg)
        for threshold in thresholds:
            defer = scores > rule.score_threshold(threshold)
            rate = float(defer.mean())
            accuracy = base_accuracy + float(benefit[defer].sum()) / n
            point = CurvePoint(
                rate,
                accuracy,
                1.0 - accuracy + cost * rate,
                (float(threshold),),
                _two_model_relative_cost(rate, inference_costs),
            )
            curve.points.append(point)
        curve.points.sort(key=lambda p: p.deferral_rate)
        return curve

    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    gains = np.concatenate([[0.0], np.cumsum(benefit[order])])
    tied = 0
    for alpha in _check_rates(rates):
        count = int(np.floor(alpha * n + 1e-9))
        if 0 < count < n and sorted_scores[count - 1] == sorted_scores[count]:
            tied += 1
        boundary = sorted_scores[count] if count < n else -np.inf
        rate = count / n
        accuracy = base_accuracy + float(gains[count]) / n
        curve.points.append(
            CurvePoint(
                rate,
                accuracy,
                1.0 - accuracy + cost * rate,
                (rule.user_threshold(float(boundary)),),
                _two_model_relative_cost(rate, inference_costs),
            )
        )
    if tied:
        logger.warning(f"Правило {rule.name}: {tied} границ квантилей приходятся на равные оценки")
    return curve


def _quantile_threshold(scores: np.ndarray, alpha: float) -> float:
    """Внутренний порог, при котором строго большие оценки составляют долю ≈ α."""
    n = scores.shape[0]
    count = int(np.floor(alpha * n + 1e-9))
    if count >= n:
        return -np.inf
    return float(-np.sort(-scores, kind="stable")[count])


def cascade_curve(  # noqa: PLR0913
    ds: Dataset,
    classifiers: Sequence[Classifier],
    rules: Sequence[DeferralRule],
    rates: Sequence[float] = DEFAULT_RATES,
    inference_costs: Sequence[float] | None = None,
    *,
    mode: ThresholdMode = ThresholdMode.QUANTILE,
    thresholds: Sequence[Sequence[float]] | None = None,
    world: SyntheticWorld | None = None,
    name: str = "",
    scenario: str = "",
    seed: int = 0,
) -> DeferralCurve:
    """Кривая каскада из K моделей.

    В режиме quantile порог стадии k - α-квантиль оценок правила k на всем
    наборе (общая α для всех стадий). Маршрутизация выполняется исполнителем
    каскада; доля отложения - доля примеров, ушедших дальше первой модели.
    """
    k_models = len(classifiers)
    if len(rules) != k_models - 1:
        msg = f"для {k_models} моделей нужно {k_models - 1} правил"
        raise ConfigurationError(msg)
    probs = [clf.predict_proba_many(ds.features) for clf in classifiers]

    if ThresholdMode(mode) is ThresholdMode.FIXED:
        if not thresholds:
            msg = "режим fixed требует непустой сетки порогов"
            raise ConfigurationError(msg)
        threshold_rows = [tuple(float(t) for t in row) for row in thresholds]
    else:
        stage_scores = []
        for k, rule in enumerate(rules):
            inputs = StageInputs(
                p1=probs[k],
                p2=probs[k + 1],
                labels=ds.labels,
                eta=(lambda: world.posterior_many(ds.features)) if world is not None else None,
                indices=np.arange(len(ds)),
            )
            stage_scores.append(rule.score(inputs))
        threshold_rows = [
            tuple(
                rule.user_threshold(_quantile_threshold(scores, alpha))
                for rule, scores in zip(rules, stage_scores, strict=True)
            )
            for alpha in _check_rates(rates)
        ]

    curve = DeferralCurve(rule=name or "|".join(rule.name for rule in rules), scenario=scenario, seed=seed)
    for setting in threshold_rows:
        config = CascadeConfig(tuple(classifiers), tuple(rules), setting, mode=CascadeMode.ANALYSIS)
        result = run_cascade_many(config, ds.features, ds.labels, world)
        accuracy = float(np.mean(result.predictions == ds.labels))
        invoked = result.invocation_rates()
        rate = float(np.mean(result.exit_indices > 1))
        relative = relative_inference_cost(invoked, inference_costs) if inference_costs is not None else float("nan")
        curve.points.append(CurvePoint(rate, accuracy, 1.0 - accuracy, setting, relative, tuple(invoked.tolist())))
    curve.points.sort(key=lambda p: p.deferral_rate)
    return curve


def accuracy_at_cost(curve: DeferralCurve, relative_costs: Sequence[float]) -> np.ndarray:
    """Точность, интерполированная в точках относительной стоимости."""
    costs = curve.relative_costs
    if np.any(np.isnan(costs)):
        msg = f"у кривой {curve.rule} нет относительной стоимости"
        raise ConfigurationError(msg)
    order = np.argsort(costs, kind="stable")
    return np.interp(np.asarray(relative_costs, dtype=np.float64), costs[order], curve.accuracies[order])
