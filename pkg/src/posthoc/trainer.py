"""Обучение пост-хок модели g."""

from dataclasses import dataclass, field

import numpy as np

from src.config import logger
from src.core.rng import RngSeed
from src.models.mlp import MlpModel, init_mlp, mlp_forward
from src.models.training import EpochRecord, TrainingConfig, fit_mlp
from src.posthoc.features import extract_features, feature_dim
from src.posthoc.targets import LOSS_FOR_TARGET, PosthocPairs, TargetKind
from src.shared.errors import ConfigurationError, ShapeError


@dataclass
class PosthocModel:
    """Сеть D -> ... -> 1 вместе с видом цели и L."""

    mlp: MlpModel
    target_kind: TargetKind
    num_classes: int
    history: list[EpochRecord] = field(default_factory=list)

    def __post_init__(self) -> None:  # noqa: D105
        self.target_kind = TargetKind(self.target_kind)
        if self.mlp.input_size != feature_dim(self.num_classes) or self.mlp.output_size != 1:
            msg = f"архитектура {self.mlp.layer_sizes} не подходит для L = {self.num_classes}"
            raise ShapeError(msg)

    @property
    def final_loss(self) -> float | None:
        """Потери на обучении после последней эпохи."""
        return self.history[-1].train_loss if self.history else None

    def predict_features(self, features: np.ndarray) -> np.ndarray:
        """g по готовым признакам (n, D)."""
        return mlp_forward(self.mlp, features)[:, 0]

    def predict_many(self, p1: np.ndarray) -> np.ndarray:
        """g(v(p1)) для матрицы (n, L)."""
        return self.predict_features(extract_features(np.asarray(p1, dtype=np.float64).reshape(-1, self.num_classes)))


def train_posthoc(
    pairs: PosthocPairs,
    config: TrainingConfig | None = None,
    seed: RngSeed | None = None,
    heldout: PosthocPairs | None = None,
) -> PosthocModel:
    """Обучить g; функция потерь определяется видом цели."""
    config = config or TrainingConfig()
    seed = seed or RngSeed(0)
    if len(pairs) == 0:
        msg = "нет пар для обучения пост-хок модели"
        raise ConfigurationError(msg)
    if heldout is not None and (heldout.kind is not pairs.kind or heldout.num_classes != pairs.num_classes):
        msg = "отложенные пары должны иметь тот же вид цели и L"
        raise ShapeError(msg)

    sizes = (feature_dim(pairs.num_classes), *config.hidden_sizes, 1)
    initial = init_mlp(sizes, seed.child("init"))
    held = (heldout.features, heldout.targets) if heldout is not None else None
    result = fit_mlp(
        initial,
        pairs.features,
        pairs.targets,
        LOSS_FOR_TARGET[pairs.kind],
        config,
        seed.child("shuffle"),
        held,
    )
    logger.info(
        f"Пост-хок {pairs.kind.value}: потери {result.initial_loss:.5f} -> {result.final_loss:.5f} "
        f"за {config.epochs} эпох на {len(pairs)} примерах"
    )
    return PosthocModel(result.model, pairs.kind, pairs.num_classes, result.history)
