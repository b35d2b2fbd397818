"""Признаки пост-хок модели из выхода первой модели.

Порядок блоков: [энтропия; 10 наибольших вероятностей по убыванию, дополненные
нулями; one-hot argmax]. Длина D = L + 11.
"""

import numpy as np

from src.core.probability import ProbVector, entropy

TOP_K = 10
EXTRA_FEATURES = TOP_K + 1


def feature_dim(num_classes: int) -> int:
    """D = L + 11."""
    return num_classes + EXTRA_FEATURES


def extract_features(p1: ProbVector | np.ndarray) -> np.ndarray:
    """v(p1) для вектора (L,) или матрицы (n, L)."""
    array = np.asarray(p1, dtype=np.float64)
    single = array.ndim == 1
    probs = array.reshape(1, -1) if single else array
    n, size = probs.shape

    top = np.zeros((n, TOP_K))
    ranked = -np.sort(-probs, axis=1)[:, :TOP_K]
    top[:, : ranked.shape[1]] = ranked

    onehot = np.zeros((n, size))
    onehot[np.arange(n), np.argmax(probs, axis=1)] = 1.0

    features = np.hstack([np.asarray(entropy(probs)).reshape(n, 1), top, onehot])
    return features[0] if single else features
