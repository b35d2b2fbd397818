"""Детерминированная случайность.

Все потоки строятся на счетчиковом генераторе Philox из numpy:
``Generator(Philox(key=seed))``. Дочерние зерна выводятся через
``SeedSequence(seed, spawn_key=...)``, поэтому параллельная работа
делится по зернам, а не по общему потоку.
"""

import zlib
from dataclasses import dataclass

import numpy as np

_MASK_64 = (1 << 64) - 1


def _label_to_int(label: int | str) -> int:
    """Стабильно превратить метку в целое (без hash() питона)."""
    if isinstance(label, str):
        return zlib.crc32(label.encode("utf-8"))
    return int(label) & _MASK_64


@dataclass(frozen=True)
class RngSeed:
    """64-битное зерно."""

    seed: int

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "seed", int(self.seed) & _MASK_64)

    def generator(self) -> np.random.Generator:
        """Новый поток Philox для этого зерна."""
        return np.random.Generator(np.random.Philox(key=self.seed))

    def child(self, *labels: int | str) -> "RngSeed":
        """Дочернее зерно для именованной подзадачи."""
        sequence = np.random.SeedSequence(self.seed, spawn_key=tuple(_label_to_int(label) for label in labels))
        return RngSeed(int(sequence.generate_state(1, dtype=np.uint64)[0]))

    def uniforms_at(self, indices: np.ndarray) -> np.ndarray:
        """Равномерные числа, где i-е значение зависит только от (seed, i)."""
        indices = np.asarray(indices, dtype=np.int64)
        if indices.size == 0:
            return np.empty(0, dtype=np.float64)
        stream = self.generator().random(int(indices.max()) + 1)
        return stream[indices]


def as_seed(seed: "RngSeed | int") -> RngSeed:
    """Привести int к RngSeed."""
    return seed if isinstance(seed, RngSeed) else RngSeed(seed)
