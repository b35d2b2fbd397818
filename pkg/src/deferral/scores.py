"""Оценки отложения: чем больше значение, тем сильнее довод вызвать следующую модель.

Все функции принимают одиночный вектор (L,) или матрицу (n, L) и возвращают
скаляр или массив соответственно.
"""

import numpy as np

from src.core.probability import ProbVector, entropy, max_probability
from src.posthoc.targets import TargetKind
from src.posthoc.trainer import PosthocModel
from src.shared.errors import ShapeError

Probs = ProbVector | np.ndarray


def _scalar_or_array(values: np.ndarray) -> float | np.ndarray:
    return float(values) if np.ndim(values) == 0 else values


def _pick(p: Probs, labels: int | np.ndarray) -> float | np.ndarray:
    array = np.asarray(p, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if array.ndim == 1:
        return float(array[labels])
    return array[np.arange(array.shape[0]), labels]


def score_confidence(p1: Probs) -> float | np.ndarray:
    """−max p1; порог пользователя c соответствует внутреннему −c."""
    return _scalar_or_array(-np.asarray(max_probability(p1)))


def score_entropy(p1: Probs) -> float | np.ndarray:
    """Энтропия p1."""
    return entropy(p1)


def score_bayes(eta: Probs, h1: int | np.ndarray, h2: int | np.ndarray) -> float | np.ndarray:
    """η_{h2}(x) − η_{h1}(x)."""
    return _scalar_or_array(np.asarray(_pick(eta, h2)) - np.asarray(_pick(eta, h1)))


def score_onehot_oracle(y: int | np.ndarray, h1: int | np.ndarray, h2: int | np.ndarray) -> float | np.ndarray:
    """1[y = h2] − 1[y = h1] ∈ {−1, 0, 1}."""
    y, h1, h2 = (np.asarray(v, dtype=np.int64) for v in (y, h1, h2))
    return _scalar_or_array((y == h2).astype(np.float64) - (y == h1).astype(np.float64))


def score_prob_oracle(p1: Probs, p2: Probs, y: int | np.ndarray) -> float | np.ndarray:
    """p2_y − p1_y."""
    return _scalar_or_array(np.asarray(_pick(p2, y)) - np.asarray(_pick(p1, y)))


def score_relative_confidence(p1: Probs, p2: Probs) -> float | np.ndarray:
    """max p2 − max p1."""
    return _scalar_or_array(np.asarray(max_probability(p2)) - np.asarray(max_probability(p1)))


def score_random(uniforms: float | np.ndarray) -> float | np.ndarray:
    """−U; отложение при U < τ."""
    return _scalar_or_array(-np.asarray(uniforms, dtype=np.float64))


def score_posthoc(g: PosthocModel, p1: Probs, target_kind: TargetKind) -> float | np.ndarray:
    """g(v(p1)); для maxprob из выхода вычитается max p1."""
    target_kind = TargetKind(target_kind)
    if g.target_kind is not target_kind:
        msg = f"пост-хок модель обучена на цели {g.target_kind.value}, запрошена {target_kind.value}"
        raise ShapeError(msg)
    array = np.asarray(p1, dtype=np.float64)
    if array.shape[-1] != g.num_classes:
        msg = f"пост-хок модель ожидает L = {g.num_classes}, получено {array.shape[-1]}"
        raise ShapeError(msg)
    values = g.predict_many(array.reshape(-1, g.num_classes))
    if target_kind is TargetKind.MAXPROB:
        values = values - np.max(array.reshape(-1, g.num_classes), axis=1)
    return float(values[0]) if array.ndim == 1 else values
