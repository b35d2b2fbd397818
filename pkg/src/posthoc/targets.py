"""Обучающие цели пост-хок правил."""

from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from src.core.dataset import Dataset
from src.models.classifiers import Classifier
from src.models.losses import LossKind
from src.posthoc.features import extract_features, feature_dim
from src.shared.errors import ShapeError
from src.shared.parallel import map_rows


class TargetKind(StrEnum):
    """Виды целей."""

    DIFF_01 = "diff-01"
    DIFF_PROB = "diff-prob"
    MAXPROB = "maxprob"


# diff-prob обучается на MAE, остальные на MSE
LOSS_FOR_TARGET = {
    TargetKind.DIFF_01: LossKind.SQUARED,
    TargetKind.DIFF_PROB: LossKind.ABSOLUTE,
    TargetKind.MAXPROB: LossKind.SQUARED,
}


@dataclass(frozen=True)
class PosthocTarget:
    """Значение цели z для одного примера."""

    kind: TargetKind
    value: float


def compute_targets(p1: np.ndarray, p2: np.ndarray, labels: np.ndarray, kind: TargetKind) -> np.ndarray:
    """z для матриц вероятностей двух моделей и наблюдаемых меток."""
    kind = TargetKind(kind)
    rows = np.arange(p1.shape[0])
    if kind is TargetKind.DIFF_01:
        h1, h2 = np.argmax(p1, axis=1), np.argmax(p2, axis=1)
        return (labels == h2).astype(np.float64) - (labels == h1).astype(np.float64)
    if kind is TargetKind.DIFF_PROB:
        return p2[rows, labels] - p1[rows, labels]
    return np.max(p2, axis=1)


@dataclass(frozen=True)
class PosthocPairs:
    """Пары (v(p1), z) в порядке примеров набора."""

    features: np.ndarray
    targets: np.ndarray
    kind: TargetKind
    num_classes: int

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "kind", TargetKind(self.kind))
        if self.features.shape != (self.targets.shape[0], feature_dim(self.num_classes)):
            msg = f"признаки {self.features.shape} не соответствуют {len(self)} целям и L = {self.num_classes}"
            raise ShapeError(msg)

    def __len__(self) -> int:  # noqa: D105
        return self.targets.shape[0]

    def __getitem__(self, index: int) -> tuple[np.ndarray, PosthocTarget]:  # noqa: D105
        return self.features[index], PosthocTarget(self.kind, float(self.targets[index]))

    def as_list(self) -> list[tuple[np.ndarray, PosthocTarget]]:
        """Список пар."""
        return [self[i] for i in range(len(self))]


def make_targets(ds: Dataset, model1: Classifier, model2: Classifier, kind: TargetKind) -> PosthocPairs:
    """Признаки и цели для каждого примера; здесь единственное место, где читается p2."""
    kind = TargetKind(kind)
    for model in (model1, model2):
        if model.num_classes != ds.num_classes:
            msg = f"модель {model.name or model.kind.value} имеет L = {model.num_classes}, набор - {ds.num_classes}"
            raise ShapeError(msg)
    p1 = map_rows(model1.predict_proba_many, ds.features)
    p2 = map_rows(model2.predict_proba_many, ds.features)
    return PosthocPairs(extract_features(p1), compute_targets(p1, p2, ds.labels, kind), kind, ds.num_classes)
