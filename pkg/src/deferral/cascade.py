"""Исполнитель каскада из K классификаторов."""

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from src.deferral.rules import DeferralRule, StageInputs
from src.models.classifiers import Classifier
from src.shared.errors import ConfigurationError, ShapeError
from src.worlds.base import SyntheticWorld

MIN_MODELS = 2


class CascadeMode(StrEnum):
    """Режимы исполнения."""

    DEPLOYMENT = "deployment"
    ANALYSIS = "analysis"


@dataclass(frozen=True)
class CascadeConfig:
    """K классификаторов, K−1 правил и порогов, K стоимостей (c^(1) = 0)."""

    classifiers: tuple[Classifier, ...]
    rules: tuple[DeferralRule, ...]
    thresholds: tuple[float, ...]
    costs: tuple[float, ...] = ()
    mode: CascadeMode = CascadeMode.DEPLOYMENT

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "classifiers", tuple(self.classifiers))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "thresholds", tuple(float(t) for t in self.thresholds))
        object.__setattr__(self, "mode", CascadeMode(self.mode))
        k = len(self.classifiers)
        costs = tuple(float(c) for c in self.costs) if self.costs else (0.0,) * k
        object.__setattr__(self, "costs", costs)

        if k < MIN_MODELS:
            msg = f"каскаду нужно хотя бы {MIN_MODELS} классификатора, получено {k}"
            raise ConfigurationError(msg)
        if len(self.rules) != k - 1 or len(self.thresholds) != k - 1 or len(costs) != k:
            msg = f"для K = {k} нужно {k - 1} правил и порогов и {k} стоимостей"
            raise ConfigurationError(msg)
        if len({clf.num_classes for clf in self.classifiers}) != 1:
            msg = "все классификаторы каскада должны иметь одинаковое L"
            raise ShapeError(msg)
        if costs[0] != 0.0 or any(b < a for a, b in zip(costs, costs[1:], strict=False)):
            msg = f"стоимости должны неубывать от нуля, получено {list(costs)}"
            raise ConfigurationError(msg)
        if self.mode is CascadeMode.DEPLOYMENT:
            for index, rule in enumerate(self.rules, start=1):
                if not rule.deployable:
                    msg = (
                        f"правило {rule.kind.value} на стадии {index} требует следующей модели или меток "
                        "и недопустимо в режиме deployment"
                    )
                    raise ConfigurationError(msg)

    @property
    def num_models(self) -> int:  # noqa: D102
        return len(self.classifiers)

    @property
    def num_classes(self) -> int:  # noqa: D102
        return self.classifiers[0].num_classes


@dataclass(frozen=True)
class CascadeResult:
    """Предсказание, номер стадии выхода (с 1) и флаги вызова моделей."""

    prediction: int
    exit_index: int
    invoked: tuple[bool, ...]


@dataclass
class CascadeBatchResult:
    """Результаты каскада для набора примеров."""

    predictions: np.ndarray
    exit_indices: np.ndarray
    invoked: np.ndarray
    probabilities: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:  # noqa: D105
        return self.predictions.shape[0]

    def __getitem__(self, index: int) -> CascadeResult:  # noqa: D105
        return CascadeResult(
            int(self.predictions[index]),
            int(self.exit_indices[index]),
            tuple(bool(flag) for flag in self.invoked[index]),
        )

    def invocation_rates(self) -> np.ndarray:
        """Доля примеров, на которых вызывалась каждая модель."""
        return self.invoked.mean(axis=0)


class _ModelOutputs:
    """Вероятности моделей, вычисляемые по требованию и с учетом вызовов."""

    def __init__(self, classifiers: Sequence[Classifier], features: np.ndarray) -> None:
        n = features.shape[0]
        self.classifiers = classifiers
        self.features = features
        self.values = [np.full((n, clf.num_classes), np.nan) for clf in classifiers]
        self.invoked = np.zeros((n, len(classifiers)), dtype=bool)

    def get(self, k: int, rows: np.ndarray) -> np.ndarray:
        missing = rows[~self.invoked[rows, k]]
        if missing.size:
            self.values[k][missing] = self.classifiers[k].predict_proba_many(self.features[missing])
            self.invoked[missing, k] = True
        return self.values[k][rows]


def run_cascade_many(
    cfg: CascadeConfig,
    features: np.ndarray,
    labels: np.ndarray | None = None,
    world: SyntheticWorld | None = None,
    indices: np.ndarray | None = None,
) -> CascadeBatchResult:
    """Алгоритм каскада для строк матрицы.

    На стадии k модель k вызывается только для дошедших до нее примеров;
    p следующей модели, метки и η вычисляются лениво, если их читает правило.
    ``indices`` - номера примеров для правила random (по умолчанию 0..n−1).
    """
    features = np.asarray(features, dtype=np.float64)
    if features.ndim == 1:
        features = features.reshape(1, -1)
    n = features.shape[0]
    if labels is not None and np.shape(labels) != (n,):
        msg = f"меток {np.shape(labels)} для {n} примеров"
        raise ShapeError(msg)
    example_indices = np.arange(n) if indices is None else np.asarray(indices, dtype=np.int64)

    outputs = _ModelOutputs(cfg.classifiers, features)
    predictions = np.full(n, -1, dtype=np.int64)
    exits = np.zeros(n, dtype=np.int64)
    active = np.arange(n)

    for k, (rule, threshold) in enumerate(zip(cfg.rules, cfg.thresholds, strict=True)):
        if active.size == 0:
            break
        rows = active
        probs = outputs.get(k, rows)
        inputs = StageInputs(
            p1=probs,
            p2=lambda rows=rows, k=k: outputs.get(k + 1, rows),
            labels=(lambda rows=rows: np.asarray(labels)[rows]) if labels is not None else None,
            eta=(lambda rows=rows: world.posterior_many(features[rows])) if world is not None else None,
            indices=example_indices[rows],
        )
        defer = rule.decide(inputs, threshold)
        keep = rows[~defer]
        predictions[keep] = np.argmax(probs[~defer], axis=1)
        exits[keep] = k + 1
        active = rows[defer]

    if active.size:
        last = cfg.num_models - 1
        predictions[active] = np.argmax(outputs.get(last, active), axis=1)
        exits[active] = cfg.num_models

    return CascadeBatchResult(predictions, exits, outputs.invoked, dict(enumerate(outputs.values)))


def run_cascade(
    cfg: CascadeConfig,
    x: np.ndarray,
    label: int | None = None,
    world: SyntheticWorld | None = None,
    index: int = 0,
) -> CascadeResult:
    """Каскад для одного примера."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        msg = f"ожидался один пример, получена форма {x.shape}"
        raise ShapeError(msg)
    labels = np.array([label]) if label is not None else None
    return run_cascade_many(cfg, x.reshape(1, -1), labels, world, np.array([index]))[0]
