"""Оптимальный селектор модели для K классификаторов."""

import numpy as np

from src.shared.errors import ConfigurationError, ShapeError


def _check_costs(costs: np.ndarray) -> None:
    if costs.ndim != 1 or costs.size < 1:
        msg = "стоимости должны быть непустым вектором"
        raise ShapeError(msg)
    if costs[0] != 0.0 or np.any(np.diff(costs) < 0):
        msg = f"стоимости должны неубывать от нуля, получено {costs.tolist()}"
        raise ConfigurationError(msg)


def optimal_selector(error_probs: np.ndarray | list[float], costs: np.ndarray | list[float]) -> int:
    """argmin_k error_probs[k] + costs[k]; при равенстве - меньший k (с нуля)."""
    errors = np.asarray(error_probs, dtype=np.float64)
    costs = np.asarray(costs, dtype=np.float64)
    _check_costs(costs)
    if errors.shape != costs.shape:
        msg = f"вероятностей ошибки {errors.shape}, стоимостей {costs.shape}"
        raise ShapeError(msg)
    if np.any(errors < 0) or np.any(errors > 1):
        msg = "вероятности ошибки должны лежать в [0, 1]"
        raise ConfigurationError(msg)
    return int(np.argmin(errors + costs))


def optimal_selector_many(error_probs: np.ndarray, costs: np.ndarray | list[float]) -> np.ndarray:
    """Построчный селектор для матрицы (n, K)."""
    errors = np.asarray(error_probs, dtype=np.float64)
    costs = np.asarray(costs, dtype=np.float64)
    _check_costs(costs)
    if errors.ndim != 2 or errors.shape[1] != costs.size:  # noqa: PLR2004
        msg = f"ожидалась матрица (n, {costs.size}), получено {errors.shape}"
        raise ShapeError(msg)
    return np.argmin(errors + costs[None, :], axis=1)


def selector_error_probs(eta: np.ndarray, predictions: np.ndarray) -> np.ndarray:
    """1 − η_{h_k}(x) для матрицы предсказаний (n, K)."""
    eta = np.asarray(eta, dtype=np.float64)
    predictions = np.asarray(predictions, dtype=np.int64)
    return 1.0 - np.take_along_axis(eta, predictions, axis=1)
