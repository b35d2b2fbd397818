"""Смесь изотропных гауссиан: η(x) по формуле Байеса."""

from typing import Any

import numpy as np
from scipy.special import logsumexp

from src.core.rng import RngSeed
from src.shared.errors import ConfigurationError, InvalidDistributionError, ShapeError
from src.worlds.base import SyntheticWorld

PRIOR_TOLERANCE = 1e-12


class GaussianMixtureWorld(SyntheticWorld):
    """Для каждого класса: среднее, изотропное σ и априорная вероятность."""

    kind = "gaussian-mixture"

    def __init__(self, means: np.ndarray, stddevs: np.ndarray, priors: np.ndarray) -> None:  # noqa: D107
        means = np.array(means, dtype=np.float64)
        if means.ndim == 1:
            means = means.reshape(-1, 1)
        stddevs = np.broadcast_to(np.array(stddevs, dtype=np.float64), (means.shape[0],)).copy()
        priors = np.array(priors, dtype=np.float64)

        if means.ndim != 2 or priors.shape != (means.shape[0],) or means.shape[0] < 2:  # noqa: PLR2004
            msg = f"несогласованные формы: средние {means.shape}, априорные {priors.shape}"
            raise ShapeError(msg)
        if np.any(stddevs <= 0) or not np.all(np.isfinite(stddevs)):
            msg = "стандартные отклонения должны быть положительны"
            raise ConfigurationError(msg)
        if np.any(priors < 0) or abs(priors.sum() - 1.0) > PRIOR_TOLERANCE:
            msg = f"априорные вероятности должны давать в сумме 1 (сумма {priors.sum()!r})"
            raise InvalidDistributionError(msg)

        for array in (means, stddevs, priors):
            array.flags.writeable = False
        self.means = means
        self.stddevs = stddevs
        self.priors = priors

    @property
    def num_classes(self) -> int:  # noqa: D102
        return self.means.shape[0]

    @property
    def dim(self) -> int:  # noqa: D102
        return self.means.shape[1]

    def log_joint(self, features: np.ndarray) -> np.ndarray:
        """log Pr(y) + log N(x; μ_y, σ_y² I) для всех классов, форма (n, L)."""
        array = self._check_features(features)
        squared = ((array[:, None, :] - self.means[None, :, :]) ** 2).sum(axis=2)
        variances = self.stddevs**2
        log_density = -squared / (2 * variances) - self.dim * np.log(self.stddevs) - 0.5 * self.dim * np.log(2 * np.pi)
        with np.errstate(divide="ignore"):
            log_priors = np.log(self.priors)
        return log_density + log_priors[None, :]

    def posterior_many(self, features: np.ndarray) -> np.ndarray:  # noqa: D102
        log_joint = self.log_joint(features)
        return np.exp(log_joint - logsumexp(log_joint, axis=1, keepdims=True))

    def class_priors(self) -> np.ndarray:  # noqa: D102
        return self.priors.copy()

    def _sample_chunk(self, n: int, seed: RngSeed) -> tuple[np.ndarray, np.ndarray]:
        rng = seed.generator()
        labels = rng.choice(self.num_classes, size=n, p=self.priors)
        noise = rng.standard_normal((n, self.dim))
        features = self.means[labels] + noise * self.stddevs[labels][:, None]
        return features, labels

    def reweighted(self, class_weights: np.ndarray) -> "GaussianMixtureWorld":
        """Новые априорные ∝ π_y·w_y; условные плотности классов не меняются."""
        weighted = self.priors * np.asarray(class_weights, dtype=np.float64)
        return GaussianMixtureWorld(self.means, self.stddevs, weighted / weighted.sum())

    def marginal(self, dims: list[int] | tuple[int, ...]) -> "GaussianMixtureWorld":
        """Точный маргинал по координатам dims (для изотропных компонент - срез средних)."""
        dims = list(dims)
        if not dims or min(dims) < 0 or max(dims) >= self.dim or len(set(dims)) != len(dims):
            msg = f"некорректный набор координат {dims} для размерности {self.dim}"
            raise ConfigurationError(msg)
        return GaussianMixtureWorld(self.means[:, dims], self.stddevs, self.priors)

    def to_dict(self) -> dict[str, Any]:  # noqa: D102
        return {
            "kind": self.kind,
            "means": self.means.tolist(),
            "stddevs": self.stddevs.tolist(),
            "priors": self.priors.tolist(),
        }
