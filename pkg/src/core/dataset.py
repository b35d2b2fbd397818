"""Размеченные примеры и наборы данных."""

from collections.abc import Iterator
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from src.shared.errors import ArtifactIOError, ConfigurationError, ShapeError


@dataclass(frozen=True)
class LabeledExample:
    """Пример (x, y)."""

    x: np.ndarray
    y: int


@dataclass(frozen=True)
class Dataset:
    """Упорядоченный набор примеров с общими L и размерностью признаков.

    Хранится столбцами: ``features`` формы (n, d) и ``labels`` формы (n,).
    Массивы заморожены после создания.
    """

    features: np.ndarray
    labels: np.ndarray
    num_classes: int

    def __post_init__(self) -> None:  # noqa: D105
        features = np.array(self.features, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.int64)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        if features.ndim != 2 or labels.ndim != 1 or features.shape[0] != labels.shape[0]:
            msg = f"несогласованные формы признаков {features.shape} и меток {labels.shape}"
            raise ShapeError(msg)
        if labels.shape[0] == 0:
            msg = "набор данных не может быть пустым"
            raise ConfigurationError(msg)
        if self.num_classes < 2:  # noqa: PLR2004
            msg = f"нужно хотя бы два класса, получено {self.num_classes}"
            raise ConfigurationError(msg)
        if labels.min() < 0 or labels.max() >= self.num_classes:
            msg = f"метки должны лежать в [0, {self.num_classes})"
            raise ConfigurationError(msg)
        features.flags.writeable = False
        labels.flags.writeable = False
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:  # noqa: D105
        return self.labels.shape[0]

    def __iter__(self) -> Iterator[LabeledExample]:  # noqa: D105
        for row, label in zip(self.features, self.labels, strict=True):
            yield LabeledExample(x=row, y=int(label))

    def __getitem__(self, index: int) -> LabeledExample:  # noqa: D105
        return LabeledExample(x=self.features[index], y=int(self.labels[index]))

    @property
    def dim(self) -> int:
        """Размерность признаков."""
        return self.features.shape[1]

    @property
    def examples(self) -> list[LabeledExample]:
        """Список примеров в исходном порядке."""
        return list(self)

    def subset(self, indices: np.ndarray) -> "Dataset":
        """Поднабор с сохранением порядка индексов."""
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(self.features[indices], self.labels[indices], self.num_classes)

    def with_labels(self, labels: np.ndarray) -> "Dataset":
        """Те же признаки с другими метками."""
        return Dataset(self.features, labels, self.num_classes)

    def class_frequencies(self) -> np.ndarray:
        """Эмпирические частоты классов."""
        return np.bincount(self.labels, minlength=self.num_classes) / len(self)

    @classmethod
    def from_examples(cls, examples: list[LabeledExample], num_classes: int) -> "Dataset":
        """Собрать набор из списка примеров."""
        if not examples:
            msg = "набор данных не может быть пустым"
            raise ConfigurationError(msg)
        dims = {np.asarray(example.x).shape for example in examples}
        if len(dims) != 1:
            msg = f"разные размерности признаков: {sorted(dims)}"
            raise ShapeError(msg)
        features = np.stack([np.asarray(example.x, dtype=np.float64) for example in examples])
        labels = np.array([example.y for example in examples], dtype=np.int64)
        return cls(features, labels, num_classes)


def save_dataset_csv(dataset: Dataset, path: str | Path) -> None:
    """Сохранить набор в CSV с заголовком ``f0,...,fd,label``."""
    frame = pd.DataFrame(dataset.features, columns=[f"f{i}" for i in range(dataset.dim)])
    frame["label"] = dataset.labels
    try:
        frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    except OSError as e:
        msg = f"не удалось записать набор данных {path}: {e}"
        raise ArtifactIOError(msg) from e


def load_dataset_csv(path: str | Path, num_classes: int | None = None) -> Dataset:
    """Прочитать набор из CSV; L по умолчанию - максимум меток + 1."""
    try:
        frame = pd.read_csv(path, encoding="utf-8")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        msg = f"не удалось прочитать набор данных {path}: {e}"
        raise ArtifactIOError(msg) from e

    feature_columns = [column for column in frame.columns if column != "label"]
    expected = [f"f{i}" for i in range(len(feature_columns))]
    if "label" not in frame.columns or feature_columns != expected:
        msg = f"{path}: ожидался заголовок {','.join([*expected, 'label'])}"
        raise ArtifactIOError(msg)

    labels = frame["label"].to_numpy(dtype=np.int64)
    classes = num_classes if num_classes is not None else int(labels.max()) + 1
    return Dataset(frame[feature_columns].to_numpy(dtype=np.float64), labels, classes)
