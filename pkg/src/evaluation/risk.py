"""Риск каскада из двух моделей: эмпирический и точный на дискретном носителе."""

from dataclasses import dataclass

import numpy as np

from src.core.dataset import Dataset
from src.deferral.rules import DeferralRule, InputName, StageInputs
from src.models.classifiers import Classifier
from src.shared.errors import ConfigurationError, ShapeError
from src.shared.parallel import map_rows
from src.worlds.base import SyntheticWorld
from src.worlds.discrete import DiscreteWorld


@dataclass(frozen=True)
class TwoModelOutputs:
    """Выходы обеих моделей на наборе, вычисленные один раз."""

    p1: np.ndarray
    p2: np.ndarray
    labels: np.ndarray
    features: np.ndarray

    @property
    def h1(self) -> np.ndarray:  # noqa: D102
        return np.argmax(self.p1, axis=1)

    @property
    def h2(self) -> np.ndarray:  # noqa: D102
        return np.argmax(self.p2, axis=1)

    @property
    def correct1(self) -> np.ndarray:  # noqa: D102
        return (self.h1 == self.labels).astype(np.float64)

    @property
    def correct2(self) -> np.ndarray:  # noqa: D102
        return (self.h2 == self.labels).astype(np.float64)

    def __len__(self) -> int:  # noqa: D105
        return self.labels.shape[0]


def two_model_outputs(ds: Dataset, model1: Classifier, model2: Classifier) -> TwoModelOutputs:
    """p1, p2 и метки набора."""
    if model1.num_classes != ds.num_classes or model2.num_classes != ds.num_classes:
        msg = f"L моделей ({model1.num_classes}, {model2.num_classes}) не совпадает с L набора ({ds.num_classes})"
        raise ShapeError(msg)
    return TwoModelOutputs(
        map_rows(model1.predict_proba_many, ds.features),
        map_rows(model2.predict_proba_many, ds.features),
        ds.labels,
        ds.features,
    )


def rule_inputs(
    outputs: TwoModelOutputs,
    world: SyntheticWorld | None = None,
    indices: np.ndarray | None = None,
) -> StageInputs:
    """Входы правила в режиме анализа: доступны p2, метки и (при наличии мира) η."""
    return StageInputs(
        p1=outputs.p1,
        p2=outputs.p2,
        labels=outputs.labels,
        eta=(lambda: world.posterior_many(outputs.features)) if world is not None else None,
        indices=np.arange(len(outputs)) if indices is None else indices,
    )


def rule_decisions(
    rule: DeferralRule,
    outputs: TwoModelOutputs,
    threshold: float,
    world: SyntheticWorld | None = None,
) -> np.ndarray:
    """Маска отложения правила на наборе."""
    return rule.decide(rule_inputs(outputs, world), threshold)


def cascade_risk(
    ds: Dataset,
    model1: Classifier,
    model2: Classifier,
    rule: DeferralRule,
    threshold: float,
    cost: float,
    world: SyntheticWorld | None = None,
) -> float:
    """Эмпирическое среднее 1[y≠h1]·1[r=0] + 1[y≠h2]·1[r=1] + cost·1[r=1]."""
    outputs = two_model_outputs(ds, model1, model2)
    defer = rule_decisions(rule, outputs, threshold, world).astype(np.float64)
    losses = (1.0 - outputs.correct1) * (1.0 - defer) + (1.0 - outputs.correct2 + cost) * defer
    return float(np.mean(losses))


@dataclass(frozen=True)
class SupportTable:
    """Дискретный мир вместе с выходами моделей в каждой точке носителя."""

    world: DiscreteWorld
    p1: np.ndarray
    p2: np.ndarray

    @property
    def marginals(self) -> np.ndarray:  # noqa: D102
        return self.world.marginals

    @property
    def eta(self) -> np.ndarray:  # noqa: D102
        return self.world.posteriors

    @property
    def h1(self) -> np.ndarray:  # noqa: D102
        return np.argmax(self.p1, axis=1)

    @property
    def h2(self) -> np.ndarray:  # noqa: D102
        return np.argmax(self.p2, axis=1)

    @property
    def size(self) -> int:  # noqa: D102
        return self.world.support_size

    def eta_at(self, labels: np.ndarray) -> np.ndarray:
        """η_{labels[i]}(x_i)."""
        return self.eta[np.arange(self.size), labels]

    def beta(self) -> np.ndarray:
        """β(x) = η_{h2}(x) − η_{h1}(x)."""
        return self.eta_at(self.h2) - self.eta_at(self.h1)


def support_table(world: SyntheticWorld, model1: Classifier, model2: Classifier) -> SupportTable:
    """Таблица носителя; мир обязан быть дискретным."""
    if not isinstance(world, DiscreteWorld):
        msg = f"точные ожидания требуют дискретного мира, получен {world.kind}"
        raise ConfigurationError(msg)
    return SupportTable(world, model1.predict_proba_many(world.points), model2.predict_proba_many(world.points))


def support_decisions(table: SupportTable, rule: DeferralRule | np.ndarray, threshold: float = 0.0) -> np.ndarray:
    """Решения правила на парах (x_i, y): матрица (m, L).

    Для правил, зависящих от метки, строки различаются; правило random
    использует номер точки носителя, а не пары.
    """
    m, size = table.size, table.world.num_classes
    if not isinstance(rule, DeferralRule):
        mask = np.asarray(rule, dtype=bool)
        if mask.shape == (m,):
            return np.repeat(mask[:, None], size, axis=1)
        if mask.shape == (m, size):
            return mask
        msg = f"маска правила должна иметь форму ({m},) или ({m}, {size}), получено {mask.shape}"
        raise ShapeError(msg)

    points = np.repeat(np.arange(m), size)
    labels = np.tile(np.arange(size), m)
    inputs = StageInputs(
        p1=table.p1[points],
        p2=table.p2[points],
        labels=labels,
        eta=table.eta[points],
        indices=points,
    )
    return rule.decide(inputs, threshold).reshape(m, size)


def x_measurable_decisions(table: SupportTable, rule: DeferralRule | np.ndarray, threshold: float = 0.0) -> np.ndarray:
    """Решения, зависящие только от x; иначе ошибка конфигурации."""
    decisions = support_decisions(table, rule, threshold)
    if np.any(decisions != decisions[:, :1]):
        msg = "правило зависит от метки; выражение через η(x) к нему неприменимо"
        raise ConfigurationError(msg)
    return decisions[:, 0]


def expected_cascade_risk(
    world: SyntheticWorld,
    model1: Classifier,
    model2: Classifier,
    rule: DeferralRule | np.ndarray,
    threshold: float,
    cost: float,
) -> float:
    """Точное ожидание риска каскада: сумма по парам (x, y) с весами Pr(x)·η_y(x)."""
    table = support_table(world, model1, model2)
    decisions = support_decisions(table, rule, threshold).astype(np.float64)
    size = world.num_classes
    wrong1 = (np.arange(size)[None, :] != table.h1[:, None]).astype(np.float64)
    wrong2 = (np.arange(size)[None, :] != table.h2[:, None]).astype(np.float64)
    losses = wrong1 * (1.0 - decisions) + (wrong2 + cost) * decisions
    weights = table.marginals[:, None] * table.eta
    return float(np.sum(weights * losses))


def excess_risk(
    source: Dataset | SyntheticWorld,
    model1: Classifier,
    model2: Classifier,
    rule: DeferralRule | np.ndarray,
    cost: float,
    threshold: float | None = None,
    world: SyntheticWorld | None = None,
) -> float:
    """E_x[(1[r(x)=1] − 1[α(x)<0])·α(x)], α(x) = η_{h1}(x) − η_{h2}(x) + c.

    На дискретном мире - точная сумма по носителю; на наборе данных -
    среднее по примерам, η берется из ``world``. Порог правила по умолчанию
    равен стоимости.
    """
    threshold = cost if threshold is None else threshold
    if isinstance(source, SyntheticWorld):
        table = support_table(source, model1, model2)
        decisions = x_measurable_decisions(table, rule, threshold).astype(np.float64)
        alpha = -table.beta() + cost
        return float(np.sum(table.marginals * (decisions - (alpha < 0)) * alpha))

    if world is None:
        msg = "для избыточного риска на наборе нужен аналитический мир с известным η"
        raise ConfigurationError(msg)
    outputs = two_model_outputs(source, model1, model2)
    eta = world.posterior_many(source.features)
    rows = np.arange(len(outputs))
    alpha = eta[rows, outputs.h1] - eta[rows, outputs.h2] + cost
    if isinstance(rule, DeferralRule):
        if InputName.LABELS in rule.required_inputs:
            msg = "правило зависит от метки; выражение через η(x) к нему неприменимо"
            raise ConfigurationError(msg)
        decisions = rule.decide(rule_inputs(outputs, world), threshold).astype(np.float64)
    else:
        decisions = np.asarray(rule, dtype=np.float64)
    return float(np.mean((decisions - (alpha < 0)) * alpha))
