"""Генераторы настольных гауссовских миров."""

import numpy as np

from src.config import logger
from src.core.rng import RngSeed, as_seed
from src.shared.errors import ConfigurationError
from src.worlds.gaussian import GaussianMixtureWorld

DEFAULT_NUM_CLASSES = 20
DEFAULT_NUM_CLUSTERS = 4


def make_clustered_world(
    num_classes: int = DEFAULT_NUM_CLASSES,
    num_clusters: int = DEFAULT_NUM_CLUSTERS,
    view_dims: int = 2,
    extra_dims: int = 6,
    cluster_radius: float = 5.0,
    class_jitter: float = 1.0,
    code_scale: float = 4.0,
    stddev: float = 1.0,
    seed: RngSeed | int = 0,
) -> GaussianMixtureWorld:
    """Смесь, в которой кластер виден в первых координатах, а класс - в остальных.

    Класс k принадлежит кластеру k mod M. Центры кластеров лежат на окружности
    радиуса cluster_radius в плоскости первых двух координат; внутри кластера
    классы различаются сдвигом class_jitter в тех же координатах и кодом
    масштаба code_scale в extra_dims дополнительных координатах.
    """
    if num_classes < 2 or num_clusters < 1 or num_clusters > num_classes:  # noqa: PLR2004
        msg = f"некорректные размеры: классов {num_classes}, кластеров {num_clusters}"
        raise ConfigurationError(msg)
    if view_dims < 1 or extra_dims < 0:
        msg = f"некорректные размерности: view_dims={view_dims}, extra_dims={extra_dims}"
        raise ConfigurationError(msg)
    if stddev <= 0 or cluster_radius < 0 or class_jitter < 0 or code_scale < 0:
        msg = "масштабы генератора должны быть неотрицательными, stddev - положительным"
        raise ConfigurationError(msg)

    rng = as_seed(seed).generator()
    angles = 2 * np.pi * np.arange(num_clusters) / num_clusters
    centers = np.zeros((num_clusters, view_dims))
    centers[:, 0] = cluster_radius * np.cos(angles)
    if view_dims > 1:
        centers[:, 1] = cluster_radius * np.sin(angles)

    clusters = np.arange(num_classes) % num_clusters
    view = centers[clusters] + class_jitter * rng.standard_normal((num_classes, view_dims))
    codes = code_scale * rng.standard_normal((num_classes, extra_dims))
    means = np.hstack([view, codes])

    logger.debug(f"Кластерный мир: L={num_classes}, кластеров {num_clusters}, d={view_dims}+{extra_dims}")
    return GaussianMixtureWorld(means, stddev, np.full(num_classes, 1.0 / num_classes))
