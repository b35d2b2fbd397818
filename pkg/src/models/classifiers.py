"""Вероятностные классификаторы h^(1), ..., h^(K)."""

import json
from abc import ABC, abstractmethod
from enum import StrEnum
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.special import softmax

from src.core.probability import ProbVector, temperature_transform
from src.models.codec import MODEL_FORMAT_VERSION, check_format_version, mlp_from_dict, mlp_to_dict
from src.models.mlp import MlpModel, mlp_forward
from src.shared.errors import ArtifactIOError, ConfigurationError, ModelFormatError, ShapeError
from src.worlds.base import SyntheticWorld
from src.worlds.specs import world_from_dict
from src.worlds.transforms import SubgroupPredicate

if TYPE_CHECKING:
    from src.models.training import EpochRecord

DEFAULT_EPS_GOOD = 0.02
DEFAULT_EPS_BAD = 0.02


class ClassifierKind(StrEnum):
    """Виды классификаторов."""

    ANALYTIC = "analytic"
    CORRUPTED_ANALYTIC = "corrupted-analytic"
    SPECIALIST_ANALYTIC = "specialist-analytic"
    TRAINED_MLP = "trained-mlp"


class Classifier(ABC):
    """Отображение x -> ProbVector; предсказанная метка - argmax."""

    kind: ClassifierKind

    def __init__(self, name: str = "") -> None:  # noqa: D107
        self.name = name

    @property
    @abstractmethod
    def num_classes(self) -> int:
        """Число классов L."""

    @property
    @abstractmethod
    def dim(self) -> int:
        """Ожидаемая размерность x."""

    @abstractmethod
    def _proba(self, features: np.ndarray) -> np.ndarray:
        """Вероятности для проверенной матрицы (n, dim)."""

    @abstractmethod
    def _params_dict(self) -> dict[str, Any]:
        """Параметры вида для сериализации."""

    def predict_proba_many(self, features: np.ndarray) -> np.ndarray:
        """Вероятности для строк матрицы (n, dim)."""
        array = np.asarray(features, dtype=np.float64)
        if array.ndim == 1:
            array = array.reshape(1, -1)
        if array.ndim != 2 or array.shape[1] != self.dim:  # noqa: PLR2004
            msg = f"{self.kind.value}: ожидалась размерность x = {self.dim}, получена форма {np.shape(features)}"
            raise ShapeError(msg)
        return self._proba(array)

    def predict_proba(self, x: np.ndarray) -> ProbVector:
        """p(x) для одной точки."""
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 1:
            msg = f"ожидался один пример, получена форма {x.shape}"
            raise ShapeError(msg)
        return ProbVector(self.predict_proba_many(x)[0])

    def predict(self, x: np.ndarray) -> int:
        """argmax p(x); при равенстве - меньший индекс."""
        return int(np.argmax(self.predict_proba(x).values))

    def predict_many(self, features: np.ndarray) -> np.ndarray:
        """Метки для строк матрицы."""
        return np.argmax(self.predict_proba_many(features), axis=1)

    def to_dict(self) -> dict[str, Any]:
        """JSON-описание с тегом вида."""
        header = {"format_version": MODEL_FORMAT_VERSION, "kind": self.kind.value, "name": self.name}
        return {**header, **self._params_dict()}


def _check_dims(world: SyntheticWorld, feature_dims: tuple[int, ...] | None) -> tuple[int, ...] | None:
    if feature_dims is None:
        return None
    dims = tuple(int(d) for d in feature_dims)
    if not dims or min(dims) < 0 or max(dims) >= world.dim or len(set(dims)) != len(dims):
        msg = f"некорректные feature_dims {list(dims)} для мира размерности {world.dim}"
        raise ConfigurationError(msg)
    return dims


class AnalyticClassifier(Classifier):
    """Точное апостериорное мира; с feature_dims - апостериорное по части координат."""

    kind = ClassifierKind.ANALYTIC

    def __init__(  # noqa: D107
        self,
        world: SyntheticWorld,
        feature_dims: tuple[int, ...] | None = None,
        name: str = "",
    ) -> None:
        super().__init__(name)
        self.world = world
        self.feature_dims = _check_dims(world, feature_dims)
        self._view = world.marginal(self.feature_dims) if self.feature_dims is not None else world

    @property
    def num_classes(self) -> int:  # noqa: D102
        return self.world.num_classes

    @property
    def dim(self) -> int:  # noqa: D102
        return self.world.dim

    def posterior_many(self, features: np.ndarray) -> np.ndarray:
        """Апостериорное мира (или его маргинала) без искажений."""
        array = features if self.feature_dims is None else features[:, list(self.feature_dims)]
        return self._view.posterior_many(array)

    def _proba(self, features: np.ndarray) -> np.ndarray:
        return self.posterior_many(features)

    def _params_dict(self) -> dict[str, Any]:
        dims = list(self.feature_dims) if self.feature_dims is not None else None
        return {"world": self.world.to_dict(), "feature_dims": dims}


class CorruptedAnalyticClassifier(AnalyticClassifier):
    """Апостериорное после температурного преобразования p^τ / Σ p^τ."""

    kind = ClassifierKind.CORRUPTED_ANALYTIC

    def __init__(  # noqa: D107
        self,
        world: SyntheticWorld,
        temperature: float,
        feature_dims: tuple[int, ...] | None = None,
        name: str = "",
    ) -> None:
        if temperature <= 0:
            msg = f"температура должна быть положительной, получено {temperature}"
            raise ConfigurationError(msg)
        super().__init__(world, feature_dims, name)
        self.temperature = float(temperature)

    def _proba(self, features: np.ndarray) -> np.ndarray:
        return temperature_transform(self.posterior_many(features), self.temperature)

    def _params_dict(self) -> dict[str, Any]:
        return {**super()._params_dict(), "temperature": self.temperature}


class SpecialistAnalyticClassifier(AnalyticClassifier):
    """Почти точен на X_good и почти случаен вне подгруппы.

    Для b = argmax η(x) из X_good выход равен 1 − ε_good на b. Иначе модель
    называет наиболее вероятный класс своей подгруппы j и кладет на него
    1/L + ε_bad, остальная масса делится поровну.
    """

    kind = ClassifierKind.SPECIALIST_ANALYTIC

    def __init__(  # noqa: D107, PLR0913
        self,
        world: SyntheticWorld,
        predicate: SubgroupPredicate,
        eps_good: float = DEFAULT_EPS_GOOD,
        eps_bad: float = DEFAULT_EPS_BAD,
        feature_dims: tuple[int, ...] | None = None,
        name: str = "",
    ) -> None:
        super().__init__(world, feature_dims, name)
        size = world.num_classes
        if predicate.num_classes != size:
            msg = f"предикат подгруппы задан для L = {predicate.num_classes}, у мира L = {size}"
            raise ShapeError(msg)
        if not 0.0 <= eps_good <= (size - 1) / size or not 0.0 <= eps_bad <= 1.0 - 1.0 / size:
            msg = f"ε_good и ε_bad вне допустимого диапазона: {eps_good}, {eps_bad}"
            raise ConfigurationError(msg)
        self.predicate = predicate
        self.eps_good = float(eps_good)
        self.eps_bad = float(eps_bad)

    def _proba(self, features: np.ndarray) -> np.ndarray:
        eta = self.posterior_many(features)
        size = self.num_classes
        rows = np.arange(eta.shape[0])
        best = np.argmax(eta, axis=1)
        in_group = self.predicate.mask[best]
        guess = np.argmax(np.where(self.predicate.mask[None, :], eta, -np.inf), axis=1)

        peak_bad = 1.0 / size + self.eps_bad
        output = np.where(
            in_group[:, None],
            self.eps_good / (size - 1),
            (1.0 - peak_bad) / (size - 1),
        ) * np.ones_like(eta)
        output[rows, np.where(in_group, best, guess)] = np.where(in_group, 1.0 - self.eps_good, peak_bad)
        return output

    def _params_dict(self) -> dict[str, Any]:
        return {
            **super()._params_dict(),
            "good_classes": sorted(self.predicate.good_classes),
            "eps_good": self.eps_good,
            "eps_bad": self.eps_bad,
        }


class TrainedMlpClassifier(Classifier):
    """Сеть с softmax на выходе."""

    kind = ClassifierKind.TRAINED_MLP

    def __init__(  # noqa: D107
        self,
        model: MlpModel,
        train_accuracy: float = 0.0,
        name: str = "",
        history: "list[EpochRecord] | None" = None,
    ) -> None:
        super().__init__(name)
        if model.output_size < 2:  # noqa: PLR2004
            msg = "классификатору нужно хотя бы два выхода"
            raise ShapeError(msg)
        self.model = model
        self.train_accuracy = float(train_accuracy)
        self.history = history or []

    @property
    def num_classes(self) -> int:  # noqa: D102
        return self.model.output_size

    @property
    def dim(self) -> int:  # noqa: D102
        return self.model.input_size

    def logits_many(self, features: np.ndarray) -> np.ndarray:
        """Сырые выходы сети."""
        return mlp_forward(self.model, features)

    def _proba(self, features: np.ndarray) -> np.ndarray:
        return softmax(self.logits_many(features), axis=1)

    def _params_dict(self) -> dict[str, Any]:
        return {"train_accuracy": self.train_accuracy, **mlp_to_dict(self.model)}


def classifier_from_dict(data: dict[str, Any]) -> Classifier:
    """Восстановить классификатор по JSON-описанию."""
    if not isinstance(data, dict):
        msg = "ожидался объект"
        raise ModelFormatError(msg, "$")
    check_format_version(data)
    try:
        kind = ClassifierKind(data.get("kind"))
    except ValueError:
        msg = f"неизвестный вид классификатора {data.get('kind')!r}"
        raise ModelFormatError(msg, "kind") from None

    name = data.get("name", "")
    if kind is ClassifierKind.TRAINED_MLP:
        return TrainedMlpClassifier(mlp_from_dict(data), data.get("train_accuracy", 0.0), name)

    try:
        world = world_from_dict(data["world"])
        dims = tuple(data["feature_dims"]) if data.get("feature_dims") is not None else None
        if kind is ClassifierKind.ANALYTIC:
            return AnalyticClassifier(world, dims, name)
        if kind is ClassifierKind.CORRUPTED_ANALYTIC:
            return CorruptedAnalyticClassifier(world, data["temperature"], dims, name)
        predicate = SubgroupPredicate(frozenset(data["good_classes"]), world.num_classes)
        return SpecialistAnalyticClassifier(world, predicate, data["eps_good"], data["eps_bad"], dims, name)
    except KeyError as e:
        msg = "отсутствует обязательное поле"
        raise ModelFormatError(msg, str(e.args[0])) from None
    except ConfigurationError as e:
        raise ModelFormatError(str(e), "world") from e


def save_classifier(clf: Classifier, path: str | Path) -> None:
    """Записать классификатор в JSON."""
    try:
        Path(path).write_text(json.dumps(clf.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as e:
        msg = f"не удалось записать классификатор {path}: {e}"
        raise ArtifactIOError(msg) from e


def load_classifier(path: str | Path) -> Classifier:
    """Прочитать классификатор из JSON."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        msg = f"не удалось прочитать классификатор {path}: {e}"
        raise ArtifactIOError(msg) from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        msg = f"некорректный JSON: {e.msg}"
        raise ModelFormatError(msg, f"строка {e.lineno}, столбец {e.colno}") from e
    return classifier_from_dict(data)
