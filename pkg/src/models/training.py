"""Обучение сетей мини-батчами с Adam."""

from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from src.config import logger
from src.core.dataset import Dataset
from src.core.rng import RngSeed
from src.models.classifiers import TrainedMlpClassifier
from src.models.losses import LOSSES, LossKind
from src.models.mlp import MlpModel, init_mlp, mlp_backward, mlp_forward
from src.models.optim import OptimizerState, adam_step
from src.shared.errors import ConfigurationError, TrainingDivergenceError

# Значения по умолчанию для пост-хок сети
DEFAULT_EPOCHS = 20
DEFAULT_BATCH_SIZE = 128
DEFAULT_LEARNING_RATE = 0.0007
DEFAULT_L2 = 0.001
DEFAULT_HIDDEN_SIZES = (64, 16)


@dataclass(frozen=True)
class TrainingConfig:
    """Гиперпараметры обучения."""

    epochs: int = DEFAULT_EPOCHS
    batch_size: int = DEFAULT_BATCH_SIZE
    learning_rate: float = DEFAULT_LEARNING_RATE
    l2: float = DEFAULT_L2
    hidden_sizes: tuple[int, ...] = DEFAULT_HIDDEN_SIZES

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "hidden_sizes", tuple(int(size) for size in self.hidden_sizes))
        if self.epochs < 0 or self.batch_size < 1:
            msg = f"epochs должно быть >= 0, batch_size >= 1 (получено {self.epochs}, {self.batch_size})"
            raise ConfigurationError(msg)
        if self.learning_rate <= 0 or self.l2 < 0:
            msg = f"learning_rate должен быть > 0, l2 >= 0 (получено {self.learning_rate}, {self.l2})"
            raise ConfigurationError(msg)
        if any(size < 1 for size in self.hidden_sizes):
            msg = f"размеры скрытых слоев должны быть положительными: {self.hidden_sizes}"
            raise ConfigurationError(msg)

    @classmethod
    def from_dict(cls, data: dict[str, Any], where: str = "training") -> "TrainingConfig":
        """Разобрать JSON-описание; неизвестные ключи отклоняются."""
        allowed = {"epochs", "batch_size", "learning_rate", "l2", "hidden_sizes"}
        unknown = set(data) - allowed
        if unknown:
            msg = f"{where}: неизвестные ключи {sorted(unknown)}"
            raise ConfigurationError(msg)
        try:
            return cls(**data)
        except (TypeError, ValueError) as e:
            msg = f"{where}: {e}"
            raise ConfigurationError(msg) from e

    def to_dict(self) -> dict[str, Any]:  # noqa: D102
        result = asdict(self)
        result["hidden_sizes"] = list(self.hidden_sizes)
        return result


@dataclass(frozen=True)
class EpochRecord:
    """Потери после эпохи; эпоха 0 - до обучения."""

    epoch: int
    train_loss: float
    heldout_loss: float | None = None


@dataclass
class FitResult:
    """Обученная сеть и история потерь."""

    model: MlpModel
    history: list[EpochRecord] = field(default_factory=list)

    @property
    def initial_loss(self) -> float:  # noqa: D102
        return self.history[0].train_loss

    @property
    def final_loss(self) -> float:  # noqa: D102
        return self.history[-1].train_loss


def _full_loss(model: MlpModel, inputs: np.ndarray, targets: np.ndarray, loss_kind: LossKind) -> float:
    loss, _ = LOSSES[loss_kind](mlp_forward(model, inputs), targets)
    if not np.isfinite(loss):
        msg = f"нечисловое значение потерь {loss_kind.value}"
        raise TrainingDivergenceError(msg)
    return loss


def fit_mlp(
    model: MlpModel,
    inputs: np.ndarray,
    targets: np.ndarray,
    loss_kind: LossKind,
    config: TrainingConfig,
    seed: RngSeed,
    heldout: tuple[np.ndarray, np.ndarray] | None = None,
) -> FitResult:
    """Обучить копию сети; порядок примеров в эпохе e берется из seed.child("epoch", e)."""
    inputs = np.asarray(inputs, dtype=np.float64)
    n = inputs.shape[0]
    if n == 0:
        msg = "нечего обучать: пустой набор"
        raise ConfigurationError(msg)

    loss_fn = LOSSES[loss_kind]
    current = model.copy()
    params = current.parameters()
    state = OptimizerState.create(params, config.learning_rate, config.l2, current.decay_mask())

    def record(epoch: int) -> EpochRecord:
        held = _full_loss(current, *heldout, loss_kind) if heldout is not None else None
        return EpochRecord(epoch, _full_loss(current, inputs, targets, loss_kind), held)

    history = [record(0)]
    for epoch in range(1, config.epochs + 1):
        order = seed.child("epoch", epoch).generator().permutation(n)
        for start in range(0, n, config.batch_size):
            batch = order[start : start + config.batch_size]
            outputs = mlp_forward(current, inputs[batch])
            _, upstream = loss_fn(outputs, targets[batch])
            grads = mlp_backward(current, inputs[batch], upstream).as_list()
            params, state = adam_step(state, params, grads)
            current = current.with_parameters(params)
        history.append(record(epoch))
        logger.debug(f"Эпоха {epoch}/{config.epochs}: потери {history[-1].train_loss:.6f}")

    return FitResult(current, history)


def train_classifier(
    ds: Dataset,
    config: TrainingConfig,
    seed: RngSeed,
    name: str = "",
) -> TrainedMlpClassifier:
    """Классификатор-сеть с softmax-выходом, обученный на перекрестной энтропии."""
    sizes = (ds.dim, *config.hidden_sizes, ds.num_classes)
    initial = init_mlp(sizes, seed.child("init"))
    result = fit_mlp(initial, ds.features, ds.labels, LossKind.CROSS_ENTROPY, config, seed.child("shuffle"))

    classifier = TrainedMlpClassifier(result.model, train_accuracy=0.0, name=name)
    accuracy = float(np.mean(classifier.predict_many(ds.features) == ds.labels))
    logger.info(f"Классификатор {name or sizes}: точность на обучении {accuracy:.4f}, потери {result.final_loss:.4f}")
    return TrainedMlpClassifier(result.model, train_accuracy=accuracy, name=name, history=result.history)
