"""Полносвязная сеть: прямой и обратный проход на numpy."""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from src.core.rng import RngSeed
from src.shared.errors import ShapeError


@dataclass
class MlpModel:
    """Слои x @ W + b; ReLU на скрытых слоях, на выходе без активации.

    ``weights[i]`` имеет форму (layer_sizes[i], layer_sizes[i + 1]).
    """

    layer_sizes: tuple[int, ...]
    weights: list[np.ndarray] = field(default_factory=list)
    biases: list[np.ndarray] = field(default_factory=list)

    def __post_init__(self) -> None:  # noqa: D105
        self.layer_sizes = tuple(int(size) for size in self.layer_sizes)
        if len(self.layer_sizes) < 2 or min(self.layer_sizes) < 1:  # noqa: PLR2004
            msg = f"некорректная архитектура {self.layer_sizes}"
            raise ShapeError(msg)
        if not self.weights:
            self.weights = [np.zeros(shape) for shape in self.weight_shapes]
            self.biases = [np.zeros(size) for size in self.layer_sizes[1:]]
        self.weights = [np.array(w, dtype=np.float64) for w in self.weights]
        self.biases = [np.array(b, dtype=np.float64) for b in self.biases]

        if [w.shape for w in self.weights] != self.weight_shapes:
            msg = f"формы весов {[w.shape for w in self.weights]} не соответствуют архитектуре {self.layer_sizes}"
            raise ShapeError(msg)
        if [b.shape for b in self.biases] != [(size,) for size in self.layer_sizes[1:]]:
            msg = f"формы смещений не соответствуют архитектуре {self.layer_sizes}"
            raise ShapeError(msg)
        if not all(np.all(np.isfinite(p)) for p in self.parameters()):
            msg = "параметры сети должны быть конечными"
            raise ShapeError(msg)

    @property
    def weight_shapes(self) -> list[tuple[int, int]]:
        """Ожидаемые формы матриц весов."""
        return list(zip(self.layer_sizes[:-1], self.layer_sizes[1:], strict=True))

    @property
    def input_size(self) -> int:
        """Размер входа D."""
        return self.layer_sizes[0]

    @property
    def output_size(self) -> int:
        """Размер выхода."""
        return self.layer_sizes[-1]

    def parameters(self) -> list[np.ndarray]:
        """Параметры в порядке W0, b0, W1, b1, ..."""
        return [p for pair in zip(self.weights, self.biases, strict=True) for p in pair]

    def decay_mask(self) -> list[bool]:
        """Какие параметры получают L2: только матрицы весов."""
        return [True, False] * len(self.weights)

    def with_parameters(self, params: Sequence[np.ndarray]) -> "MlpModel":
        """Копия сети с параметрами в порядке ``parameters()``."""
        return MlpModel(self.layer_sizes, [p.copy() for p in params[0::2]], [p.copy() for p in params[1::2]])

    def copy(self) -> "MlpModel":
        """Глубокая копия."""
        return self.with_parameters(self.parameters())


def init_mlp(layer_sizes: Sequence[int], seed: RngSeed) -> MlpModel:
    """Веса и смещения из U(−1/√fan_in, 1/√fan_in)."""
    sizes = tuple(int(size) for size in layer_sizes)
    rng = seed.generator()
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:], strict=True):
        bound = 1.0 / np.sqrt(fan_in)
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(rng.uniform(-bound, bound, size=fan_out))
    return MlpModel(sizes, weights, biases)


def _as_batch(m: MlpModel, inputs: np.ndarray) -> tuple[np.ndarray, bool]:
    array = np.asarray(inputs, dtype=np.float64)
    single = array.ndim == 1
    if single:
        array = array.reshape(1, -1)
    if array.ndim != 2 or array.shape[1] != m.input_size:  # noqa: PLR2004
        msg = f"сеть ожидает вход размера {m.input_size}, получена форма {np.shape(inputs)}"
        raise ShapeError(msg)
    return array, single


def _forward_trace(m: MlpModel, batch: np.ndarray) -> list[np.ndarray]:
    """Входы каждого слоя; последний элемент - выход сети."""
    activations = [batch]
    last = len(m.weights) - 1
    for i, (w, b) in enumerate(zip(m.weights, m.biases, strict=True)):
        z = activations[-1] @ w + b
        activations.append(z if i == last else np.maximum(z, 0.0))
    return activations


def mlp_forward(m: MlpModel, inputs: np.ndarray) -> np.ndarray:
    """Сырые выходы сети для вектора (D,) или матрицы (n, D)."""
    batch, single = _as_batch(m, inputs)
    output = _forward_trace(m, batch)[-1]
    return output[0] if single else output


@dataclass
class MlpGradients:
    """Градиенты по весам и смещениям."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]

    def as_list(self) -> list[np.ndarray]:
        """В порядке ``MlpModel.parameters()``."""
        return [g for pair in zip(self.weights, self.biases, strict=True) for g in pair]


def mlp_backward(m: MlpModel, inputs: np.ndarray, upstream: np.ndarray) -> MlpGradients:
    """Градиенты Σ_n ⟨upstream_n, f(x_n)⟩ по параметрам.

    Субградиент ReLU в нуле равен 0.
    """
    batch, single = _as_batch(m, inputs)
    delta = np.asarray(upstream, dtype=np.float64)
    if single:
        delta = delta.reshape(1, -1)
    if delta.shape != (batch.shape[0], m.output_size):
        msg = f"градиент сверху должен иметь форму {(batch.shape[0], m.output_size)}, получено {delta.shape}"
        raise ShapeError(msg)

    activations = _forward_trace(m, batch)
    grad_w: list[np.ndarray] = [np.empty(0)] * len(m.weights)
    grad_b: list[np.ndarray] = [np.empty(0)] * len(m.weights)
    for i in range(len(m.weights) - 1, -1, -1):
        grad_w[i] = activations[i].T @ delta
        grad_b[i] = delta.sum(axis=0)
        if i > 0:
            delta = (delta @ m.weights[i].T) * (activations[i] > 0)
    return MlpGradients(grad_w, grad_b)
