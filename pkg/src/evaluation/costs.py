"""Относительная стоимость инференса каскада."""

from collections.abc import Sequence

import numpy as np

from src.shared.errors import ConfigurationError, ShapeError


def relative_inference_cost(invocation_rates: Sequence[float] | np.ndarray, inference_costs: Sequence[float]) -> float:
    """Σ_k rate_k · cost_k / max cost.

    ``invocation_rates[k]`` - доля примеров, на которых вызывалась модель k;
    для каскада из двух моделей это ``[1, τ]``.
    """
    rates = np.asarray(invocation_rates, dtype=np.float64)
    costs = np.asarray(inference_costs, dtype=np.float64)
    if rates.shape != costs.shape or rates.ndim != 1:
        msg = f"долей вызова {rates.shape}, стоимостей {costs.shape}"
        raise ShapeError(msg)
    if np.any(costs <= 0):
        msg = f"стоимости инференса должны быть положительными, получено {costs.tolist()}"
        raise ConfigurationError(msg)
    if np.any(rates < 0) or np.any(rates > 1):
        msg = "доли вызова должны лежать в [0, 1]"
        raise ConfigurationError(msg)
    return float(np.dot(rates, costs) / costs.max())
