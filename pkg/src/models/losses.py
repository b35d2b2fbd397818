"""Функции потерь: среднее по примерам и градиент по выходу сети."""

from collections.abc import Callable
from enum import StrEnum

import numpy as np
from scipy.special import log_softmax, softmax

from src.shared.errors import ShapeError

LossFunction = Callable[[np.ndarray, np.ndarray], tuple[float, np.ndarray]]


class LossKind(StrEnum):
    """Виды потерь."""

    SQUARED = "squared"
    ABSOLUTE = "absolute"
    CROSS_ENTROPY = "cross-entropy"


def _regression_pair(outputs: np.ndarray, targets: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    outputs = np.asarray(outputs, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64).reshape(outputs.shape[0], -1)
    if outputs.shape != targets.shape:
        msg = f"выход {outputs.shape} и цели {targets.shape} несовместимы"
        raise ShapeError(msg)
    return outputs, targets


def squared_error(outputs: np.ndarray, targets: np.ndarray) -> tuple[float, np.ndarray]:
    """Среднеквадратичная ошибка."""
    outputs, targets = _regression_pair(outputs, targets)
    residual = outputs - targets
    return float(np.mean(residual**2)), 2.0 * residual / residual.size


def absolute_error(outputs: np.ndarray, targets: np.ndarray) -> tuple[float, np.ndarray]:
    """Средняя абсолютная ошибка; субградиент в нуле равен 0."""
    outputs, targets = _regression_pair(outputs, targets)
    residual = outputs - targets
    return float(np.mean(np.abs(residual))), np.sign(residual) / residual.size


def softmax_cross_entropy(logits: np.ndarray, labels: np.ndarray) -> tuple[float, np.ndarray]:
    """Перекрестная энтропия softmax по целым меткам."""
    logits = np.asarray(logits, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if logits.ndim != 2 or labels.shape != (logits.shape[0],):  # noqa: PLR2004
        msg = f"логиты {logits.shape} и метки {labels.shape} несовместимы"
        raise ShapeError(msg)
    n = logits.shape[0]
    rows = np.arange(n)
    loss = -float(np.mean(log_softmax(logits, axis=1)[rows, labels]))
    grad = softmax(logits, axis=1)
    grad[rows, labels] -= 1.0
    return loss, grad / n


LOSSES: dict[LossKind, LossFunction] = {
    LossKind.SQUARED: squared_error,
    LossKind.ABSOLUTE: absolute_error,
    LossKind.CROSS_ENTROPY: softmax_cross_entropy,
}
