"""Разбиение набора на обучающую и отложенную части."""

import numpy as np

from src.core.dataset import Dataset
from src.core.rng import RngSeed
from src.shared.errors import ConfigurationError

DEFAULT_HELDOUT_FRACTION = 0.2


def validation_split(ds: Dataset, fraction: float, seed: RngSeed) -> tuple[Dataset, Dataset]:
    """Отложить round(fraction·n) случайных примеров; порядок внутри частей сохраняется."""
    if not 0.0 < fraction < 1.0:
        msg = f"доля отложенной части должна быть в (0, 1), получено {fraction}"
        raise ConfigurationError(msg)
    n = len(ds)
    heldout_size = int(round(fraction * n))
    if heldout_size in (0, n):
        msg = f"доля {fraction} на {n} примерах дает пустую часть"
        raise ConfigurationError(msg)

    chosen = np.zeros(n, dtype=bool)
    chosen[seed.generator().permutation(n)[:heldout_size]] = True
    return ds.subset(np.flatnonzero(~chosen)), ds.subset(np.flatnonzero(chosen))
