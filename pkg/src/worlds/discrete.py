"""Дискретный мир: явный конечный носитель.

Все ожидания в таком мире - конечные суммы, поэтому на нем проверяются
утверждения об оптимальности без шума Монте-Карло.
"""

from typing import Any

import numpy as np

from src.core.probability import validate_simplex
from src.core.rng import RngSeed
from src.shared.errors import ConfigurationError, InvalidDistributionError, OutOfSupportError, ShapeError
from src.worlds.base import SyntheticWorld, sample_labels

MARGINAL_TOLERANCE = 1e-12


class DiscreteWorld(SyntheticWorld):
    """Носитель {(x_i, Pr(x_i), η(x_i))}."""

    kind = "discrete"

    def __init__(self, points: np.ndarray, marginals: np.ndarray, posteriors: np.ndarray) -> None:  # noqa: D107
        points = np.array(points, dtype=np.float64)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        marginals = np.array(marginals, dtype=np.float64)
        posteriors = validate_simplex(posteriors)

        n = points.shape[0]
        if posteriors.ndim != 2 or marginals.shape != (n,) or posteriors.shape[0] != n:  # noqa: PLR2004
            msg = "носитель, маргиналы и апостериорные должны иметь одинаковое число точек"
            raise ShapeError(msg)
        if points.shape[0] == 0:
            msg = "носитель не может быть пустым"
            raise ConfigurationError(msg)
        if np.any(marginals < 0) or abs(marginals.sum() - 1.0) > MARGINAL_TOLERANCE:
            msg = f"маргиналы должны быть неотрицательны и давать в сумме 1 (сумма {marginals.sum()!r})"
            raise InvalidDistributionError(msg)

        self._index = {tuple(row): i for i, row in enumerate(points.tolist())}
        if len(self._index) != points.shape[0]:
            msg = "точки носителя должны быть различны"
            raise ConfigurationError(msg)

        for array in (points, marginals, posteriors):
            array.flags.writeable = False
        self.points = points
        self.marginals = marginals
        self.posteriors = posteriors

    @property
    def num_classes(self) -> int:  # noqa: D102
        return self.posteriors.shape[1]

    @property
    def dim(self) -> int:  # noqa: D102
        return self.points.shape[1]

    @property
    def support_size(self) -> int:
        """Число точек носителя."""
        return self.points.shape[0]

    def support_indices(self, features: np.ndarray) -> np.ndarray:
        """Индексы точек носителя для строк матрицы."""
        array = self._check_features(features)
        indices = np.empty(array.shape[0], dtype=np.int64)
        for i, row in enumerate(array.tolist()):
            position = self._index.get(tuple(row))
            if position is None:
                msg = f"точка {row} не принадлежит носителю"
                raise OutOfSupportError(msg)
            indices[i] = position
        return indices

    def posterior_many(self, features: np.ndarray) -> np.ndarray:  # noqa: D102
        return self.posteriors[self.support_indices(features)]

    def class_priors(self) -> np.ndarray:  # noqa: D102
        return self.marginals @ self.posteriors

    def _sample_chunk(self, n: int, seed: RngSeed) -> tuple[np.ndarray, np.ndarray]:
        rng = seed.generator()
        indices = rng.choice(self.support_size, size=n, p=self.marginals)
        labels = sample_labels(self.posteriors[indices], rng.random(n))
        return self.points[indices], labels

    def reweighted(self, class_weights: np.ndarray) -> "DiscreteWorld":
        """Pr'(x, y) ∝ Pr(x, y)·w_y."""
        weights = np.asarray(class_weights, dtype=np.float64)
        joint = self.marginals[:, None] * self.posteriors * weights[None, :]
        point_mass = joint.sum(axis=1)
        safe = np.where(point_mass > 0, point_mass, 1.0)
        posteriors = np.where(point_mass[:, None] > 0, joint / safe[:, None], self.posteriors)
        return DiscreteWorld(self.points, point_mass / point_mass.sum(), posteriors)

    def with_posteriors(self, posteriors: np.ndarray) -> "DiscreteWorld":
        """Тот же носитель и маргиналы, другие апостериорные (мир «убеждений» модели)."""
        return DiscreteWorld(self.points, self.marginals, posteriors)

    def to_dict(self) -> dict[str, Any]:  # noqa: D102
        return {
            "kind": self.kind,
            "num_classes": self.num_classes,
            "support": [
                {"x": point, "probability": probability, "posterior": posterior}
                for point, probability, posterior in zip(
                    self.points.tolist(), self.marginals.tolist(), self.posteriors.tolist(), strict=True
                )
            ],
        }
