"""Мир с шумом меток поверх базового мира."""

from typing import Any

import numpy as np

from src.core.dataset import Dataset
from src.core.rng import RngSeed
from src.worlds.base import SyntheticWorld
from src.worlds.transforms import ScenarioTransform, apply_label_noise, label_noise_channel


class NoisyLabelWorld(SyntheticWorld):
    """Наблюдаемая метка проходит через канал шума T.

    Апостериорное наблюдаемой метки равно ηᵀT; признаки совпадают с базовым миром.
    """

    kind = "label-noise"

    def __init__(self, base: SyntheticWorld, transform: ScenarioTransform) -> None:  # noqa: D107
        self.base = base
        self.transform = transform
        self.channel = label_noise_channel(transform, base.num_classes)
        self.channel.flags.writeable = False

    @property
    def num_classes(self) -> int:  # noqa: D102
        return self.base.num_classes

    @property
    def dim(self) -> int:  # noqa: D102
        return self.base.dim

    def posterior_many(self, features: np.ndarray) -> np.ndarray:  # noqa: D102
        return self.base.posterior_many(features) @ self.channel

    def class_priors(self) -> np.ndarray:  # noqa: D102
        return self.base.class_priors() @ self.channel

    def _sample_chunk(self, n: int, seed: RngSeed) -> tuple[np.ndarray, np.ndarray]:
        features, labels = self.base._sample_chunk(n, seed.child("base"))  # noqa: SLF001
        noisy = apply_label_noise(Dataset(features, labels, self.num_classes), self.transform, seed.child("noise"))
        return noisy.features, noisy.labels

    def marginal(self, dims: list[int] | tuple[int, ...]) -> "NoisyLabelWorld":
        """Тот же канал шума над маргиналом базового мира."""
        return NoisyLabelWorld(self.base.marginal(dims), self.transform)

    def to_dict(self) -> dict[str, Any]:  # noqa: D102
        return {"kind": self.kind, "base": self.base.to_dict(), "transform": self.transform.to_dict()}
