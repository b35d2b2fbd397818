"""Оптимизатор Adam с L2-штрафом в градиенте."""

from collections.abc import Sequence
from dataclasses import dataclass, field, replace

import numpy as np

from src.shared.errors import ShapeError, TrainingDivergenceError

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPSILON = 1e-8


@dataclass(frozen=True)
class OptimizerState:
    """Состояние Adam: моменты, счетчик шагов и вес L2."""

    learning_rate: float
    l2: float = 0.0
    step: int = 0
    first_moments: tuple[np.ndarray, ...] = ()
    second_moments: tuple[np.ndarray, ...] = ()
    decay_mask: tuple[bool, ...] = ()
    beta1: float = ADAM_BETA1
    beta2: float = ADAM_BETA2
    epsilon: float = ADAM_EPSILON
    algorithm: str = field(default="adam", init=False)

    @classmethod
    def create(
        cls,
        params: Sequence[np.ndarray],
        learning_rate: float,
        l2: float = 0.0,
        decay_mask: Sequence[bool] | None = None,
    ) -> "OptimizerState":
        """Нулевые моменты по формам параметров; по умолчанию L2 на всех параметрах."""
        mask = tuple(decay_mask) if decay_mask is not None else (True,) * len(params)
        if len(mask) != len(params):
            msg = "маска L2 должна иметь длину списка параметров"
            raise ShapeError(msg)
        zeros = tuple(np.zeros_like(p, dtype=np.float64) for p in params)
        return cls(learning_rate, l2, 0, zeros, zeros, mask)


def adam_step(
    state: OptimizerState,
    params: Sequence[np.ndarray],
    grads: Sequence[np.ndarray],
) -> tuple[list[np.ndarray], OptimizerState]:
    """Один шаг Adam с поправкой смещения; к градиенту добавляется 2·λ·param."""
    if len(params) != len(grads) or len(params) != len(state.first_moments):
        msg = "число параметров, градиентов и моментов не совпадает"
        raise ShapeError(msg)

    step = state.step + 1
    correction1 = 1.0 - state.beta1**step
    correction2 = 1.0 - state.beta2**step
    new_params, first, second = [], [], []
    for param, grad, m, v, decay in zip(
        params, grads, state.first_moments, state.second_moments, state.decay_mask, strict=True
    ):
        if param.shape != grad.shape:
            msg = f"форма градиента {grad.shape} не совпадает с формой параметра {param.shape}"
            raise ShapeError(msg)
        if not np.all(np.isfinite(grad)):
            msg = f"нечисловой градиент на шаге {step}"
            raise TrainingDivergenceError(msg)
        g = grad + 2.0 * state.l2 * param if decay and state.l2 else grad
        m_new = state.beta1 * m + (1.0 - state.beta1) * g
        v_new = state.beta2 * v + (1.0 - state.beta2) * g * g
        update = state.learning_rate * (m_new / correction1) / (np.sqrt(v_new / correction2) + state.epsilon)
        new_params.append(param - update)
        first.append(m_new)
        second.append(v_new)

    return new_params, replace(state, step=step, first_moments=tuple(first), second_moments=tuple(second))
