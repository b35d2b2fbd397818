"""Полный перебор правил и селекторов на малом дискретном носителе."""

import itertools
from collections.abc import Sequence

import numpy as np

from src.config import logger
from src.evaluation.risk import support_table
from src.models.classifiers import Classifier
from src.shared.errors import ConfigurationError, ShapeError, SupportTooLargeError
from src.worlds.base import SyntheticWorld
from src.worlds.discrete import DiscreteWorld

MAX_RULE_SUPPORT = 12
MAX_SELECTOR_SUPPORT = 8
MAX_SELECTOR_MODELS = 3


def enumerate_optimal_rule(
    world: SyntheticWorld,
    model1: Classifier,
    model2: Classifier,
    cost: float,
) -> tuple[np.ndarray, float]:
    """Перебрать все 2^m множеств отложения и вернуть минимизатор риска.

    Множества перебираются в порядке двоичных масок (бит i - точка i),
    при равенстве рисков выигрывает меньшая маска, т.е. «не откладывать».
    """
    table = support_table(world, model1, model2)
    m = table.size
    if m > MAX_RULE_SUPPORT:
        msg = f"перебор правил поддерживает не более {MAX_RULE_SUPPORT} точек, получено {m}"
        raise SupportTooLargeError(msg)

    masks = (np.arange(2**m)[:, None] >> np.arange(m)[None, :]) & 1
    keep_loss = table.marginals * (1.0 - table.eta_at(table.h1))
    defer_loss = table.marginals * (1.0 - table.eta_at(table.h2) + cost)
    risks = masks @ defer_loss + (1 - masks) @ keep_loss
    best = int(np.argmin(risks))
    logger.debug(f"Перебор {2**m} правил: лучший риск {risks[best]:.6f}")
    return masks[best].astype(bool), float(risks[best])


def _selector_world(world: SyntheticWorld, classifiers: Sequence[Classifier], costs: Sequence[float]) -> np.ndarray:
    if not isinstance(world, DiscreteWorld):
        msg = f"точные ожидания требуют дискретного мира, получен {world.kind}"
        raise ConfigurationError(msg)
    if len(costs) != len(classifiers):
        msg = f"{len(classifiers)} моделей и {len(costs)} стоимостей"
        raise ShapeError(msg)
    predictions = np.stack([clf.predict_many(world.points) for clf in classifiers], axis=1)
    return 1.0 - np.take_along_axis(world.posteriors, predictions, axis=1)


def expected_selector_risk(
    world: SyntheticWorld,
    classifiers: Sequence[Classifier],
    costs: Sequence[float],
    selector: np.ndarray | Sequence[int],
) -> float:
    """Σ_x Pr(x)·(1 − η_{h_s(x)}(x) + c_{s(x)}); s - номера моделей с нуля по точкам носителя."""
    errors = _selector_world(world, classifiers, costs)
    choice = np.asarray(selector, dtype=np.int64)
    if choice.shape != (errors.shape[0],) or choice.min() < 0 or choice.max() >= len(classifiers):
        msg = f"селектор должен задавать номер модели для каждой из {errors.shape[0]} точек"
        raise ShapeError(msg)
    rows = np.arange(errors.shape[0])
    losses = errors[rows, choice] + np.asarray(costs, dtype=np.float64)[choice]
    return float(np.sum(world.marginals * losses))


def enumerate_optimal_selector(
    world: SyntheticWorld,
    classifiers: Sequence[Classifier],
    costs: Sequence[float],
) -> tuple[np.ndarray, float]:
    """Перебрать все K^m селекторов; при равенстве - первый в лексикографическом порядке."""
    errors = _selector_world(world, classifiers, costs)
    m, k = errors.shape
    if m > MAX_SELECTOR_SUPPORT or k > MAX_SELECTOR_MODELS:
        msg = (
            f"перебор селекторов поддерживает до {MAX_SELECTOR_SUPPORT} точек и {MAX_SELECTOR_MODELS} моделей, "
            f"получено {m} и {k}"
        )
        raise SupportTooLargeError(msg)

    selectors = np.array(list(itertools.product(range(k), repeat=m)), dtype=np.int64).reshape(-1, m)
    losses = errors + np.asarray(costs, dtype=np.float64)[None, :]
    weighted = world.marginals[:, None] * losses
    risks = weighted[np.arange(m)[None, :], selectors].sum(axis=1)
    best = int(np.argmin(risks))
    logger.debug(f"Перебор {selectors.shape[0]} селекторов: лучший риск {risks[best]:.6f}")
    return selectors[best], float(risks[best])
