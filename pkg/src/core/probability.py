"""Векторы вероятностей на симплексе и операции над ними."""

from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from src.shared.errors import InvalidDistributionError, ShapeError

SIMPLEX_TOLERANCE = 1e-9
MIN_CLASSES = 2


def validate_simplex(probs: np.ndarray) -> np.ndarray:
    """Проверить, что строки массива лежат на симплексе.

    Принимает вектор формы (L,) или матрицу (n, L). Возвращает копию
    в float64. Отрицательные значения в пределах допуска обнуляются.
    """
    array = np.array(probs, dtype=np.float64)
    if array.ndim not in (1, 2) or array.shape[-1] < MIN_CLASSES:
        msg = f"ожидался вектор длины >= {MIN_CLASSES} или матрица, получена форма {array.shape}"
        raise ShapeError(msg)
    if not np.all(np.isfinite(array)):
        msg = "распределение содержит нечисловые значения"
        raise InvalidDistributionError(msg)
    if np.any(array < -SIMPLEX_TOLERANCE) or np.any(array > 1 + SIMPLEX_TOLERANCE):
        msg = "вероятности должны лежать в [0, 1]"
        raise InvalidDistributionError(msg)
    sums = array.sum(axis=-1)
    if np.any(np.abs(sums - 1.0) > SIMPLEX_TOLERANCE):
        worst = float(np.max(np.abs(sums - 1.0)))
        msg = f"сумма вероятностей отличается от 1 на {worst:.3e}"
        raise InvalidDistributionError(msg)
    return np.clip(array, 0.0, 1.0)


@dataclass(frozen=True)
class ProbVector:
    """Точка L-симплекса: выход вероятностного классификатора."""

    values: np.ndarray

    def __post_init__(self) -> None:  # noqa: D105
        array = validate_simplex(self.values)
        if array.ndim != 1:
            msg = f"ProbVector должен быть одномерным, получена форма {array.shape}"
            raise ShapeError(msg)
        array.flags.writeable = False
        object.__setattr__(self, "values", array)

    def __array__(self, dtype=None, copy=None) -> np.ndarray:  # noqa: ANN001, D105, ARG002
        return self.values if dtype is None else self.values.astype(dtype)

    def __len__(self) -> int:  # noqa: D105
        return self.values.shape[0]

    def __getitem__(self, index: int) -> float:  # noqa: D105
        return float(self.values[index])

    @property
    def num_classes(self) -> int:
        """Число классов L."""
        return self.values.shape[0]

    def tolist(self) -> list[float]:
        """Список вероятностей."""
        return self.values.tolist()


def argmax_label(p: ProbVector | np.ndarray) -> int | np.ndarray:
    """Индекс максимума; при равенстве побеждает меньший индекс.

    Для матрицы (n, L) возвращает массив меток.
    """
    array = np.asarray(p, dtype=np.float64)
    labels = np.argmax(array, axis=-1)
    return int(labels) if labels.ndim == 0 else labels


def entropy(p: ProbVector | np.ndarray) -> float | np.ndarray:
    """Энтропия в натах, 0·ln 0 = 0."""
    array = np.asarray(p, dtype=np.float64)
    values = entr(array).sum(axis=-1)
    return float(values) if np.ndim(values) == 0 else values


def max_probability(p: ProbVector | np.ndarray) -> float | np.ndarray:
    """Максимальная вероятность (уверенность)."""
    values = np.max(np.asarray(p, dtype=np.float64), axis=-1)
    return float(values) if np.ndim(values) == 0 else values


def normalize(raw: np.ndarray | list[float]) -> ProbVector:
    """Нормировать неотрицательный вектор в распределение."""
    array = np.asarray(raw, dtype=np.float64)
    if array.ndim != 1:
        msg = f"normalize ожидает вектор, получена форма {array.shape}"
        raise ShapeError(msg)
    if np.any(array < 0) or not np.all(np.isfinite(array)):
        msg = "normalize: отрицательные или нечисловые значения"
        raise InvalidDistributionError(msg)
    total = array.sum()
    if total <= 0:
        msg = "normalize: все значения нулевые"
        raise InvalidDistributionError(msg)
    return ProbVector(array / total)


def normalize_rows(raw: np.ndarray) -> np.ndarray:
    """Построчная нормировка матрицы неотрицательных весов."""
    array = np.asarray(raw, dtype=np.float64)
    totals = array.sum(axis=-1, keepdims=True)
    if np.any(totals <= 0):
        msg = "normalize_rows: строка из одних нулей"
        raise InvalidDistributionError(msg)
    return array / totals


def temperature_transform(probs: np.ndarray, temperature: float) -> np.ndarray:
    """p^τ / Σ p^τ построчно; сохраняет argmax при τ > 0."""
    if temperature <= 0:
        msg = f"температура должна быть положительной, получено {temperature}"
        raise InvalidDistributionError(msg)
    array = np.asarray(probs, dtype=np.float64)
    if temperature == 1.0:
        return array.copy()
    with np.errstate(divide="ignore"):
        logs = np.log(array) * temperature
    logs -= np.max(logs, axis=-1, keepdims=True)
    powered = np.exp(logs)
    return powered / powered.sum(axis=-1, keepdims=True)
