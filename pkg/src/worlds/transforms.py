"""Преобразования сценариев: шум меток, специалист, длинный хвост."""

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np

from src.config import logger
from src.core.dataset import Dataset
from src.core.rng import RngSeed
from src.shared.errors import ConfigurationError
from src.worlds.base import SyntheticWorld

# Соотношение 500:50 изображений на головной и хвостовой класс
DEFAULT_HEAD_WEIGHT = 500.0
DEFAULT_TAIL_WEIGHT = 50.0


class TransformKind(StrEnum):
    """Виды преобразований."""

    LABEL_NOISE = "label-noise"
    SPECIALIST_SPLIT = "specialist-split"
    LONG_TAIL_SKEW = "long-tail-skew"


_FIELDS_BY_KIND = {
    TransformKind.LABEL_NOISE: {"noisy_classes", "flip_probability"},
    TransformKind.SPECIALIST_SPLIT: {"good_classes"},
    TransformKind.LONG_TAIL_SKEW: {"head_count", "head_weight", "tail_weight"},
}


@dataclass(frozen=True)
class ScenarioTransform:
    """Параметры преобразования; набор полей зависит от вида."""

    kind: TransformKind
    noisy_classes: tuple[int, ...] = ()
    flip_probability: float = 1.0
    good_classes: tuple[int, ...] = ()
    head_count: int = 0
    head_weight: float = DEFAULT_HEAD_WEIGHT
    tail_weight: float = DEFAULT_TAIL_WEIGHT

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "kind", TransformKind(self.kind))
        object.__setattr__(self, "noisy_classes", tuple(sorted({int(c) for c in self.noisy_classes})))
        object.__setattr__(self, "good_classes", tuple(sorted({int(c) for c in self.good_classes})))
        if not 0.0 <= self.flip_probability <= 1.0:
            msg = f"вероятность замены метки должна быть в [0, 1], получено {self.flip_probability}"
            raise ConfigurationError(msg)
        if any(c < 0 for c in (*self.noisy_classes, *self.good_classes)):
            msg = "индексы классов должны быть неотрицательными"
            raise ConfigurationError(msg)
        if self.head_weight <= 0 or self.tail_weight <= 0:
            msg = "веса головы и хвоста должны быть положительными"
            raise ConfigurationError(msg)
        if self.kind is TransformKind.LONG_TAIL_SKEW and self.head_count < 1:
            msg = f"число головных классов должно быть >= 1, получено {self.head_count}"
            raise ConfigurationError(msg)

    @classmethod
    def label_noise(cls, noisy_classes: list[int], flip_probability: float = 1.0) -> "ScenarioTransform":
        """Шум меток на заданных классах."""
        return cls(TransformKind.LABEL_NOISE, noisy_classes=tuple(noisy_classes), flip_probability=flip_probability)

    @classmethod
    def specialist_split(cls, good_classes: list[int]) -> "ScenarioTransform":
        """Подгруппа X_good для специалиста."""
        return cls(TransformKind.SPECIALIST_SPLIT, good_classes=tuple(good_classes))

    @classmethod
    def long_tail(
        cls,
        head_count: int,
        head_weight: float = DEFAULT_HEAD_WEIGHT,
        tail_weight: float = DEFAULT_TAIL_WEIGHT,
    ) -> "ScenarioTransform":
        """Перекос меток: первые head_count классов - головные."""
        return cls(
            TransformKind.LONG_TAIL_SKEW,
            head_count=head_count,
            head_weight=head_weight,
            tail_weight=tail_weight,
        )

    @classmethod
    def from_dict(cls, data: dict[str, Any], where: str = "transform") -> "ScenarioTransform":
        """Разобрать JSON-описание."""
        if not isinstance(data, dict) or "kind" not in data:
            msg = f"{where}: ожидался объект с полем kind"
            raise ConfigurationError(msg)
        try:
            kind = TransformKind(data["kind"])
        except ValueError:
            msg = f"{where}.kind: неизвестный вид {data['kind']!r}"
            raise ConfigurationError(msg) from None
        unknown = set(data) - _FIELDS_BY_KIND[kind] - {"kind"}
        if unknown:
            msg = f"{where}: неизвестные ключи {sorted(unknown)}"
            raise ConfigurationError(msg)
        values = {key: value for key, value in data.items() if key != "kind"}
        for key in ("noisy_classes", "good_classes"):
            if key in values:
                values[key] = tuple(values[key])
        try:
            return cls(kind, **values)
        except (TypeError, ValueError) as e:
            msg = f"{where}: {e}"
            raise ConfigurationError(msg) from e

    def to_dict(self) -> dict[str, Any]:
        """JSON-описание (только поля своего вида)."""
        result: dict[str, Any] = {"kind": self.kind.value}
        for key in sorted(_FIELDS_BY_KIND[self.kind]):
            value = getattr(self, key)
            result[key] = list(value) if isinstance(value, tuple) else value
        return result

    def require(self, kind: TransformKind) -> None:
        """Проверить вид преобразования."""
        if self.kind is not kind:
            msg = f"ожидалось преобразование {kind.value}, получено {self.kind.value}"
            raise ConfigurationError(msg)


@dataclass(frozen=True)
class SubgroupPredicate:
    """Принадлежность к X_good по индексу класса."""

    good_classes: frozenset[int]
    num_classes: int
    _mask: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:  # noqa: D105
        mask = np.zeros(self.num_classes, dtype=bool)
        mask[list(self.good_classes)] = True
        mask.flags.writeable = False
        object.__setattr__(self, "_mask", mask)

    def __call__(self, labels: int | np.ndarray) -> bool | np.ndarray:  # noqa: D102
        result = self._mask[np.asarray(labels, dtype=np.int64)]
        return bool(result) if np.ndim(result) == 0 else result

    @property
    def mask(self) -> np.ndarray:
        """Булева маска длины L."""
        return self._mask


def _check_classes(classes: tuple[int, ...], num_classes: int, what: str) -> None:
    if classes and max(classes) >= num_classes:
        msg = f"{what}: индекс класса {max(classes)} вне диапазона [0, {num_classes})"
        raise ConfigurationError(msg)


def label_noise_channel(transform: ScenarioTransform, num_classes: int) -> np.ndarray:
    """Матрица T[k, j] = Pr(наблюдаемая метка j | истинная k)."""
    transform.require(TransformKind.LABEL_NOISE)
    _check_classes(transform.noisy_classes, num_classes, "label-noise")
    channel = np.eye(num_classes)
    p = transform.flip_probability
    for k in transform.noisy_classes:
        channel[k] = (1.0 - p) * channel[k] + p / num_classes
    return channel


def apply_label_noise(dataset: Dataset, transform: ScenarioTransform, seed: RngSeed) -> Dataset:
    """Заменить метки шумных классов равномерно выбранной меткой из всех L.

    Истинная метка может быть выбрана повторно, как в исходной постановке.
    """
    transform.require(TransformKind.LABEL_NOISE)
    _check_classes(transform.noisy_classes, dataset.num_classes, "label-noise")

    rng = seed.generator()
    n = len(dataset)
    flips = rng.random(n) < transform.flip_probability
    replacements = rng.integers(0, dataset.num_classes, size=n)
    noisy = np.isin(dataset.labels, transform.noisy_classes) & flips
    if not noisy.any():
        return dataset
    logger.debug(f"Шум меток: заменено {int(noisy.sum())} из {n} меток")
    return dataset.with_labels(np.where(noisy, replacements, dataset.labels))


def make_specialist_world(
    base: SyntheticWorld,
    transform: ScenarioTransform,
) -> tuple[SyntheticWorld, SubgroupPredicate]:
    """Мир не меняется; возвращается предикат подгруппы X_good."""
    transform.require(TransformKind.SPECIALIST_SPLIT)
    _check_classes(transform.good_classes, base.num_classes, "specialist-split")
    if not transform.good_classes or len(transform.good_classes) >= base.num_classes:
        msg = "подгруппа специалиста должна быть непустым собственным подмножеством классов"
        raise ConfigurationError(msg)
    return base, SubgroupPredicate(frozenset(transform.good_classes), base.num_classes)


def long_tail_weights(transform: ScenarioTransform, num_classes: int) -> np.ndarray:
    """Веса классов: первые h - головные."""
    transform.require(TransformKind.LONG_TAIL_SKEW)
    if transform.head_count >= num_classes:
        msg = f"число головных классов {transform.head_count} должно быть меньше L = {num_classes}"
        raise ConfigurationError(msg)
    weights = np.full(num_classes, transform.tail_weight, dtype=np.float64)
    weights[: transform.head_count] = transform.head_weight
    return weights


def apply_long_tail(world: SyntheticWorld, transform: ScenarioTransform) -> SyntheticWorld:
    """Перевзвесить априорные классов голова:хвост и перенормировать."""
    weights = long_tail_weights(transform, world.num_classes)
    weights_label = f"{transform.head_weight}:{transform.tail_weight}"
    logger.debug(f"Длинный хвост: {transform.head_count} головных классов, веса {weights_label}")
    return world.reweighted(weights)
