"""Базовый класс синтетического мира с известным апостериорным η(x)."""

from abc import ABC, abstractmethod
from typing import Any

import numpy as np

from src.core.dataset import Dataset
from src.core.probability import ProbVector
from src.core.rng import RngSeed
from src.shared.errors import ConfigurationError, ShapeError

# Размер порции при сэмплировании: порция i всегда получает зерно seed.child(i)
SAMPLE_CHUNK = 65536


class SyntheticWorld(ABC):
    """Совместное распределение (x, y) с точным апостериорным."""

    kind: str = ""

    @property
    @abstractmethod
    def num_classes(self) -> int:
        """Число классов L."""

    @property
    @abstractmethod
    def dim(self) -> int:
        """Размерность x."""

    @abstractmethod
    def posterior_many(self, features: np.ndarray) -> np.ndarray:
        """η(x) для строк матрицы (n, d)."""

    @abstractmethod
    def class_priors(self) -> np.ndarray:
        """Маргинальное распределение классов Pr(y)."""

    @abstractmethod
    def _sample_chunk(self, n: int, seed: RngSeed) -> tuple[np.ndarray, np.ndarray]:
        """Порция из n пар (x, y)."""

    @abstractmethod
    def to_dict(self) -> dict[str, Any]:
        """JSON-описание мира."""

    def posterior(self, x: np.ndarray) -> ProbVector:
        """η(x) для одной точки."""
        row = np.asarray(x, dtype=np.float64).reshape(1, -1)
        return ProbVector(self.posterior_many(row)[0])

    def sample(self, n: int, seed: RngSeed) -> Dataset:
        """n независимых пар (x, y); детерминировано по зерну."""
        if n < 1:
            msg = f"число примеров должно быть >= 1, получено {n}"
            raise ConfigurationError(msg)
        features, labels = [], []
        for chunk_index, start in enumerate(range(0, n, SAMPLE_CHUNK)):
            size = min(SAMPLE_CHUNK, n - start)
            chunk_x, chunk_y = self._sample_chunk(size, seed.child(chunk_index))
            features.append(chunk_x)
            labels.append(chunk_y)
        return Dataset(np.concatenate(features), np.concatenate(labels), self.num_classes)

    def reweighted(self, class_weights: np.ndarray) -> "SyntheticWorld":
        """Мир с априорными вероятностями классов, умноженными на веса."""
        msg = f"мир вида {self.kind} не поддерживает перевзвешивание классов"
        raise ConfigurationError(msg)

    def marginal(self, dims: list[int] | tuple[int, ...]) -> "SyntheticWorld":
        """Маргинальный мир по подмножеству координат."""
        msg = f"мир вида {self.kind} не поддерживает маргинализацию"
        raise ConfigurationError(msg)

    def _check_features(self, features: np.ndarray) -> np.ndarray:
        array = np.asarray(features, dtype=np.float64)
        if array.ndim == 1:
            array = array.reshape(1, -1)
        if array.ndim != 2 or array.shape[1] != self.dim:  # noqa: PLR2004
            msg = f"ожидалась размерность x = {self.dim}, получена форма {array.shape}"
            raise ShapeError(msg)
        return array


def sample_labels(posteriors: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    """Метки по строкам апостериорных вероятностей методом обратной функции распределения."""
    cdf = np.cumsum(posteriors, axis=1)
    labels = (uniforms[:, None] >= cdf).sum(axis=1)
    return np.minimum(labels, posteriors.shape[1] - 1)
