"""Конфигурация сценария: схема, проверка и разрешение ссылок."""

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from src.core.dataset import Dataset
from src.core.rng import RngSeed
from src.deferral.rules import DeferralRule, RuleKind
from src.evaluation.curves import DEFAULT_RATES, ThresholdMode
from src.models.classifiers import (
    AnalyticClassifier,
    Classifier,
    ClassifierKind,
    CorruptedAnalyticClassifier,
    SpecialistAnalyticClassifier,
)
from src.models.training import TrainingConfig, train_classifier
from src.posthoc.splits import DEFAULT_HELDOUT_FRACTION
from src.posthoc.targets import TargetKind
from src.shared.errors import ArtifactIOError, ConfigurationError
from src.worlds.base import SyntheticWorld
from src.worlds.noisy import NoisyLabelWorld
from src.worlds.specs import transforms_from_list, world_from_dict
from src.worlds.transforms import (
    ScenarioTransform,
    SubgroupPredicate,
    TransformKind,
    apply_long_tail,
    make_specialist_world,
)

BUNDLED_DIR = Path(__file__).resolve().parent.parent / "scenarios"
MIN_MODELS = 2

DEFAULT_NUM_TRAIN = 20000
DEFAULT_NUM_TEST = 10000


class DataSource:
    """Из какого мира берутся данные."""

    TRAIN = "train"
    TEST = "test"
    ALL = (TRAIN, TEST)


def _read_config_json(path: Path) -> Any:
    """JSON конфигурации: синтаксическая ошибка - ошибка конфигурации, ошибка чтения - ввода-вывода."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"не удалось прочитать {path}: {e}"
        raise ArtifactIOError(msg) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        msg = f"{path}: некорректный JSON (строка {e.lineno}, столбец {e.colno})"
        raise ConfigurationError(msg) from e


def _reject_unknown(data: dict[str, Any], allowed: set[str], where: str) -> None:
    if not isinstance(data, dict):
        msg = f"{where}: ожидался объект"
        raise ConfigurationError(msg)
    unknown = sorted(set(data) - allowed)
    if unknown:
        msg = f"{where}.{unknown[0]}: неизвестный ключ"
        raise ConfigurationError(msg)


def _require_int(value: Any, where: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        msg = f"{where}: ожидалось целое число, получено {value!r}"
        raise ConfigurationError(msg)
    if minimum is not None and value < minimum:
        msg = f"{where}: должно быть >= {minimum}, получено {value}"
        raise ConfigurationError(msg)
    return value


def _require_number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, int | float):
        msg = f"{where}: ожидалось число, получено {value!r}"
        raise ConfigurationError(msg)
    return float(value)


def _require_choice(value: Any, choices: tuple[str, ...], where: str) -> str:
    if value not in choices:
        msg = f"{where}: ожидалось одно из {list(choices)}, получено {value!r}"
        raise ConfigurationError(msg)
    return value


def _number_list(value: Any, where: str) -> tuple[float, ...]:
    if not isinstance(value, list):
        msg = f"{where}: ожидался список чисел"
        raise ConfigurationError(msg)
    return tuple(_require_number(item, f"{where}[{i}]") for i, item in enumerate(value))


@dataclass(frozen=True)
class WorldSetup:
    """Миры обучения и оценки и (для специалиста) предикат подгруппы."""

    train_world: SyntheticWorld
    test_world: SyntheticWorld
    predicate: SubgroupPredicate | None = None

    def world_for(self, source: str) -> SyntheticWorld:
        """Мир по имени источника."""
        return self.test_world if source == DataSource.TEST else self.train_world


@dataclass(frozen=True)
class WorldBlock:
    """Описание базового мира и список преобразований."""

    spec: dict[str, Any]
    transforms: tuple[ScenarioTransform, ...] = ()

    @classmethod
    def from_dict(
        cls,
        world: Any,
        transforms: Any = None,
        base_dir: Path | None = None,
    ) -> "WorldBlock":
        """Разобрать секции world и transforms; строка в world - путь к файлу мира."""
        file_transforms: list[ScenarioTransform] = []
        if isinstance(world, str):
            path = Path(world)
            if not path.is_absolute() and base_dir is not None:
                path = base_dir / path
            world = _read_config_json(path)
            if not isinstance(world, dict):
                msg = f"world: файл {path} должен содержать объект"
                raise ConfigurationError(msg)
            file_transforms = transforms_from_list(world.get("transforms", []), "world.transforms")
            world = {key: value for key, value in world.items() if key != "transforms"}
        if not isinstance(world, dict):
            msg = "world: ожидался объект или путь к файлу мира"
            raise ConfigurationError(msg)
        if "transforms" in world:
            file_transforms = transforms_from_list(world["transforms"], "world.transforms")
            world = {key: value for key, value in world.items() if key != "transforms"}

        block = cls(world, (*file_transforms, *transforms_from_list(transforms or [], "transforms")))
        block.build()
        return block

    def build(self) -> WorldSetup:
        """Применить преобразования к базовому миру."""
        base = world_from_dict(self.spec, "world")
        train_world = test_world = base
        predicate = None
        for transform in self.transforms:
            match transform.kind:
                case TransformKind.LABEL_NOISE:
                    train_world = NoisyLabelWorld(train_world, transform)
                case TransformKind.LONG_TAIL_SKEW:
                    train_world = apply_long_tail(train_world, transform)
                case TransformKind.SPECIALIST_SPLIT:
                    _, predicate = make_specialist_world(base, transform)
        return WorldSetup(train_world, test_world, predicate)

    def to_dict(self) -> dict[str, Any]:  # noqa: D102
        return dict(self.spec)


_MODEL_KEYS = {
    ClassifierKind.ANALYTIC: {"feature_dims"},
    ClassifierKind.CORRUPTED_ANALYTIC: {"feature_dims", "temperature"},
    ClassifierKind.SPECIALIST_ANALYTIC: {"feature_dims", "eps_good", "eps_bad"},
    ClassifierKind.TRAINED_MLP: {"training"},
}


@dataclass(frozen=True)
class ModelSpec:
    """Базовая модель каскада."""

    name: str
    kind: ClassifierKind
    source: str = DataSource.TRAIN
    feature_dims: tuple[int, ...] | None = None
    temperature: float = 1.0
    eps_good: float = 0.02
    eps_bad: float = 0.02
    training: TrainingConfig = field(default_factory=TrainingConfig)

    @classmethod
    def from_dict(cls, data: dict[str, Any], where: str) -> "ModelSpec":
        """Разобрать описание модели."""
        _reject_unknown(data, {"name", "kind", "source"} | _all_model_keys(), where)
        try:
            kind = ClassifierKind(data.get("kind"))
        except ValueError:
            msg = f"{where}.kind: неизвестный вид модели {data.get('kind')!r}"
            raise ConfigurationError(msg) from None
        _reject_unknown(data, {"name", "kind", "source", *_MODEL_KEYS[kind]}, where)

        name = data.get("name")
        if not isinstance(name, str) or not name:
            msg = f"{where}.name: ожидалась непустая строка"
            raise ConfigurationError(msg)
        values: dict[str, Any] = {
            "name": name,
            "kind": kind,
            "source": _require_choice(data.get("source", DataSource.TRAIN), DataSource.ALL, f"{where}.source"),
        }
        if data.get("feature_dims") is not None:
            dims = data["feature_dims"]
            if not isinstance(dims, list):
                msg = f"{where}.feature_dims: ожидался список индексов"
                raise ConfigurationError(msg)
            values["feature_dims"] = tuple(_require_int(d, f"{where}.feature_dims[{i}]", 0) for i, d in enumerate(dims))
        for key in ("temperature", "eps_good", "eps_bad"):
            if key in data:
                values[key] = _require_number(data[key], f"{where}.{key}")
        if kind is ClassifierKind.CORRUPTED_ANALYTIC and "temperature" not in data:
            msg = f"{where}.temperature: обязательное поле для {kind.value}"
            raise ConfigurationError(msg)
        if "training" in data:
            values["training"] = TrainingConfig.from_dict(data["training"], f"{where}.training")
        return cls(**values)

    def build(self, setup: WorldSetup, train_data: "TrainDataProvider", seed: RngSeed) -> Classifier:
        """Построить или обучить модель."""
        world = setup.world_for(self.source)
        match self.kind:
            case ClassifierKind.ANALYTIC:
                return AnalyticClassifier(world, self.feature_dims, self.name)
            case ClassifierKind.CORRUPTED_ANALYTIC:
                return CorruptedAnalyticClassifier(world, self.temperature, self.feature_dims, self.name)
            case ClassifierKind.SPECIALIST_ANALYTIC:
                if setup.predicate is None:
                    msg = f"модели {self.name} нужно преобразование specialist-split"
                    raise ConfigurationError(msg)
                return SpecialistAnalyticClassifier(
                    world, setup.predicate, self.eps_good, self.eps_bad, self.feature_dims, self.name
                )
            case ClassifierKind.TRAINED_MLP:
                return train_classifier(train_data(self.source), self.training, seed, self.name)

    def to_dict(self) -> dict[str, Any]:  # noqa: D102
        result: dict[str, Any] = {"name": self.name, "kind": self.kind.value, "source": self.source}
        for key in sorted(_MODEL_KEYS[self.kind]):
            value = getattr(self, key)
            if key == "training":
                result[key] = value.to_dict()
            elif key == "feature_dims":
                result[key] = list(value) if value is not None else None
            else:
                result[key] = value
        return result


def _all_model_keys() -> set[str]:
    return set().union(*_MODEL_KEYS.values())


class TrainDataProvider:
    """Обучающие наборы для сетей, сэмплируемые один раз на источник."""

    def __init__(self, setup: WorldSetup, size: int, seed: RngSeed) -> None:  # noqa: D107
        self.setup = setup
        self.size = size
        self.seed = seed
        self._cache: dict[str, Dataset] = {}

    def __call__(self, source: str) -> Dataset:  # noqa: D102
        if source not in self._cache:
            self._cache[source] = self.setup.world_for(source).sample(self.size, self.seed.child("train", source))
        return self._cache[source]


_RULE_KEYS = {"kind", "name", "target", "threshold", "model_path", "seed"}


@dataclass(frozen=True)
class RuleSpec:
    """Правило отложения для оценки."""

    kind: RuleKind
    name: str = ""
    target: TargetKind | None = None
    threshold: float | None = None
    model_path: str | None = None
    seed: int | None = None

    @classmethod
    def from_dict(cls, data: dict[str, Any], where: str, base_dir: Path | None = None) -> "RuleSpec":
        """Разобрать описание правила (posthoc без target раскрывается выше)."""
        _reject_unknown(data, _RULE_KEYS, where)
        try:
            kind = RuleKind(data.get("kind"))
        except ValueError:
            msg = f"{where}.kind: неизвестный вид правила {data.get('kind')!r}"
            raise ConfigurationError(msg) from None
        values: dict[str, Any] = {"kind": kind, "name": data.get("name", "")}
        if not isinstance(values["name"], str):
            msg = f"{where}.name: ожидалась строка"
            raise ConfigurationError(msg)
        if "target" in data:
            if kind is not RuleKind.POSTHOC:
                msg = f"{where}.target: допустимо только для posthoc"
                raise ConfigurationError(msg)
            try:
                values["target"] = TargetKind(data["target"])
            except ValueError:
                msg = f"{where}.target: неизвестный вид цели {data['target']!r}"
                raise ConfigurationError(msg) from None
        if "model_path" in data:
            if kind is not RuleKind.POSTHOC or not isinstance(data["model_path"], str):
                msg = f"{where}.model_path: путь к модели допустим только для posthoc"
                raise ConfigurationError(msg)
            path = Path(data["model_path"])
            values["model_path"] = str((base_dir / path if base_dir is not None else path).resolve())
        if "seed" in data:
            if kind is not RuleKind.RANDOM:
                msg = f"{where}.seed: допустимо только для random"
                raise ConfigurationError(msg)
            values["seed"] = _require_int(data["seed"], f"{where}.seed", 0)
        if "threshold" in data:
            values["threshold"] = _require_number(data["threshold"], f"{where}.threshold")
        return cls(**values)

    @property
    def label(self) -> str:
        """Имя в отчетах."""
        if self.name:
            return self.name
        if self.kind is RuleKind.POSTHOC and self.target is not None:
            return f"posthoc-{self.target.value}"
        return self.kind.value

    def make_rule(self, seed: RngSeed, posthoc_model: Any = None) -> DeferralRule:
        """Правило для одной стадии."""
        rule_seed = RngSeed(self.seed) if self.seed is not None else seed
        return DeferralRule(self.kind, self.target, posthoc_model, rule_seed, self.label)

    def to_dict(self) -> dict[str, Any]:  # noqa: D102
        result: dict[str, Any] = {"kind": self.kind.value, "name": self.label}
        if self.target is not None:
            result["target"] = self.target.value
        for key in ("threshold", "model_path", "seed"):
            if getattr(self, key) is not None:
                result[key] = getattr(self, key)
        return result


_POSTHOC_KEYS = {"targets", "split_fraction", "validation_source", "num_samples"}
_TRAINING_KEYS = {"epochs", "batch_size", "learning_rate", "l2", "hidden_sizes"}


@dataclass(frozen=True)
class PosthocBlock:
    """Обучение пост-хок правил."""

    targets: tuple[TargetKind, ...] = tuple(TargetKind)
    split_fraction: float = DEFAULT_HELDOUT_FRACTION
    validation_source: str = DataSource.TRAIN
    num_samples: int | None = None
    training: TrainingConfig = field(default_factory=TrainingConfig)

    @classmethod
    def from_dict(cls, data: dict[str, Any] | None, where: str = "posthoc") -> "PosthocBlock":
        """Разобрать блок; гиперпараметры сети лежат в нем же."""
        data = data or {}
        _reject_unknown(data, _POSTHOC_KEYS | _TRAINING_KEYS, where)
        values: dict[str, Any] = {}
        if "targets" in data:
            if not isinstance(data["targets"], list) or not data["targets"]:
                msg = f"{where}.targets: ожидался непустой список"
                raise ConfigurationError(msg)
            try:
                values["targets"] = tuple(TargetKind(t) for t in data["targets"])
            except ValueError as e:
                msg = f"{where}.targets: {e}"
                raise ConfigurationError(msg) from None
        if "split_fraction" in data:
            fraction = _require_number(data["split_fraction"], f"{where}.split_fraction")
            if not 0.0 < fraction < 1.0:
                msg = f"{where}.split_fraction: должно быть в (0, 1), получено {fraction}"
                raise ConfigurationError(msg)
            values["split_fraction"] = fraction
        if "validation_source" in data:
            values["validation_source"] = _require_choice(
                data["validation_source"], DataSource.ALL, f"{where}.validation_source"
            )
        if data.get("num_samples") is not None:
            values["num_samples"] = _require_int(data["num_samples"], f"{where}.num_samples", 2)
        training = {key: value for key, value in data.items() if key in _TRAINING_KEYS}
        values["training"] = TrainingConfig.from_dict(training, where)
        return cls(**values)

    def to_dict(self) -> dict[str, Any]:  # noqa: D102
        return {
            "targets": [t.value for t in self.targets],
            "split_fraction": self.split_fraction,
            "validation_source": self.validation_source,
            "num_samples": self.num_samples,
            **self.training.to_dict(),
        }


_EVALUATION_KEYS = {
    "num_train",
    "num_test",
    "rates",
    "threshold_mode",
    "thresholds",
    "deferral_cost",
    "inference_costs",
    "seeds",
    "calibration",
}


@dataclass(frozen=True)
class EvaluationBlock:
    """Параметры оценки."""

    num_train: int = DEFAULT_NUM_TRAIN
    num_test: int = DEFAULT_NUM_TEST
    rates: tuple[float, ...] = DEFAULT_RATES
    threshold_mode: ThresholdMode = ThresholdMode.QUANTILE
    thresholds: tuple[tuple[float, ...], ...] = ()
    deferral_cost: float = 0.0
    inference_costs: tuple[float, ...] | None = None
    seeds: tuple[int, ...] = ()
    calibration: bool = True

    @classmethod
    def from_dict(cls, data: dict[str, Any] | None, where: str = "evaluation") -> "EvaluationBlock":  # noqa: C901
        """Разобрать блок; thresholds - числа (K = 2) или списки по стадиям."""
        data = data or {}
        _reject_unknown(data, _EVALUATION_KEYS, where)
        values: dict[str, Any] = {}
        for key in ("num_train", "num_test"):
            if key in data:
                values[key] = _require_int(data[key], f"{where}.{key}", 1)
        if "rates" in data:
            rates = _number_list(data["rates"], f"{where}.rates")
            if not rates or any(r < 0 or r > 1 for r in rates) or list(rates) != sorted(rates):
                msg = f"{where}.rates: непустой отсортированный список долей из [0, 1]"
                raise ConfigurationError(msg)
            values["rates"] = rates
        if "threshold_mode" in data:
            mode = _require_choice(data["threshold_mode"], tuple(ThresholdMode), f"{where}.threshold_mode")
            values["threshold_mode"] = ThresholdMode(mode)
        if "thresholds" in data:
            raw = data["thresholds"]
            if not isinstance(raw, list):
                msg = f"{where}.thresholds: ожидался список"
                raise ConfigurationError(msg)
            values["thresholds"] = tuple(
                _number_list(item, f"{where}.thresholds[{i}]")
                if isinstance(item, list)
                else (_require_number(item, f"{where}.thresholds[{i}]"),)
                for i, item in enumerate(raw)
            )
        if "deferral_cost" in data:
            values["deferral_cost"] = _require_number(data["deferral_cost"], f"{where}.deferral_cost")
        if data.get("inference_costs") is not None:
            costs = _number_list(data["inference_costs"], f"{where}.inference_costs")
            if any(c <= 0 for c in costs):
                msg = f"{where}.inference_costs: стоимости должны быть положительными"
                raise ConfigurationError(msg)
            values["inference_costs"] = costs
        if "seeds" in data:
            seeds = data["seeds"]
            if not isinstance(seeds, list) or not seeds:
                msg = f"{where}.seeds: ожидался непустой список"
                raise ConfigurationError(msg)
            values["seeds"] = tuple(_require_int(s, f"{where}.seeds[{i}]", 0) for i, s in enumerate(seeds))
            if len(set(values["seeds"])) != len(values["seeds"]):
                msg = f"{where}.seeds: зерна повторяются"
                raise ConfigurationError(msg)
        if "calibration" in data:
            if not isinstance(data["calibration"], bool):
                msg = f"{where}.calibration: ожидалось true или false"
                raise ConfigurationError(msg)
            values["calibration"] = data["calibration"]
        return cls(**values)

    def to_dict(self) -> dict[str, Any]:  # noqa: D102
        result = {
            "num_train": self.num_train,
            "num_test": self.num_test,
            "rates": list(self.rates),
            "threshold_mode": self.threshold_mode.value,
            "thresholds": [list(row) for row in self.thresholds],
            "deferral_cost": self.deferral_cost,
            "inference_costs": list(self.inference_costs) if self.inference_costs is not None else None,
            "calibration": self.calibration,
        }
        if self.seeds:
            result["seeds"] = list(self.seeds)
        return result


_SCENARIO_KEYS = {
    "scenario", "description", "seed", "output_dir", "world", "transforms", "models", "rules", "posthoc", "evaluation",
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Полностью разрешенная конфигурация сценария."""

    scenario: str
    world: WorldBlock
    models: tuple[ModelSpec, ...]
    rules: tuple[RuleSpec, ...]
    posthoc: PosthocBlock = field(default_factory=PosthocBlock)
    evaluation: EvaluationBlock = field(default_factory=EvaluationBlock)
    seed: int = 0
    output_dir: str | None = None
    description: str = ""

    @property
    def num_models(self) -> int:  # noqa: D102
        return len(self.models)

    @property
    def seeds(self) -> tuple[int, ...]:
        """Зерна повторов; по умолчанию - одно зерно сценария."""
        return self.evaluation.seeds or (self.seed,)

    @classmethod
    def from_dict(cls, data: dict[str, Any], base_dir: Path | None = None) -> "ScenarioConfig":
        """Проверить всю схему до каких-либо вычислений."""
        _reject_unknown(data, _SCENARIO_KEYS, "$")
        scenario = data.get("scenario")
        if not isinstance(scenario, str) or not scenario:
            msg = "scenario: ожидался непустой идентификатор"
            raise ConfigurationError(msg)
        if "world" not in data:
            msg = "world: обязательная секция"
            raise ConfigurationError(msg)
        world = WorldBlock.from_dict(data["world"], data.get("transforms"), base_dir)

        raw_models = data.get("models")
        if not isinstance(raw_models, list) or len(raw_models) < MIN_MODELS:
            msg = f"models: нужно хотя бы {MIN_MODELS} модели"
            raise ConfigurationError(msg)
        models = tuple(ModelSpec.from_dict(item, f"models[{i}]") for i, item in enumerate(raw_models))
        if len({m.name for m in models}) != len(models):
            msg = "models: имена моделей должны быть уникальны"
            raise ConfigurationError(msg)

        posthoc = PosthocBlock.from_dict(data.get("posthoc"))
        raw_rules = data.get("rules")
        if not isinstance(raw_rules, list) or not raw_rules:
            msg = "rules: нужен непустой список правил"
            raise ConfigurationError(msg)
        rules: list[RuleSpec] = []
        for i, item in enumerate(raw_rules):
            spec = RuleSpec.from_dict(item, f"rules[{i}]", base_dir)
            if spec.kind is RuleKind.POSTHOC and spec.target is None and spec.model_path is None:
                rules.extend(RuleSpec(spec.kind, target=target, threshold=spec.threshold) for target in posthoc.targets)
            else:
                rules.append(spec)

        values: dict[str, Any] = {
            "scenario": scenario,
            "world": world,
            "models": models,
            "rules": tuple(rules),
            "posthoc": posthoc,
            "evaluation": EvaluationBlock.from_dict(data.get("evaluation")),
        }
        if "description" in data:
            if not isinstance(data["description"], str):
                msg = "description: ожидалась строка"
                raise ConfigurationError(msg)
            values["description"] = data["description"]
        if "seed" in data:
            values["seed"] = _require_int(data["seed"], "seed", 0)
        if data.get("output_dir") is not None:
            if not isinstance(data["output_dir"], str):
                msg = "output_dir: ожидалась строка"
                raise ConfigurationError(msg)
            values["output_dir"] = data["output_dir"]
        config = cls(**values)
        config.validate()
        return config

    def validate(self) -> None:
        """Согласованность секций между собой."""
        k = self.num_models
        labels = [rule.label for rule in self.rules]
        if len(set(labels)) != len(labels):
            msg = f"rules: имена правил должны быть уникальны, получено {labels}"
            raise ConfigurationError(msg)
        evaluation = self.evaluation
        if evaluation.inference_costs is not None and len(evaluation.inference_costs) != k:
            msg = f"evaluation.inference_costs: нужно {k} стоимостей"
            raise ConfigurationError(msg)
        if evaluation.threshold_mode is ThresholdMode.FIXED:
            if not evaluation.thresholds:
                msg = "evaluation.thresholds: режим fixed требует сетки порогов"
                raise ConfigurationError(msg)
            if any(len(row) != k - 1 for row in evaluation.thresholds):
                msg = f"evaluation.thresholds: каждая точка сетки задает {k - 1} порог(а)"
                raise ConfigurationError(msg)
        for i, rule in enumerate(self.rules):
            if k > MIN_MODELS and (rule.threshold is not None or rule.model_path is not None):
                msg = f"rules[{i}]: threshold и model_path поддерживаются только для двух моделей"
                raise ConfigurationError(msg)
        if any(m.kind is ClassifierKind.SPECIALIST_ANALYTIC for m in self.models):
            if not any(t.kind is TransformKind.SPECIALIST_SPLIT for t in self.world.transforms):
                msg = "models: модели specialist-analytic нужно преобразование specialist-split"
                raise ConfigurationError(msg)

    def with_overrides(self, output_dir: str | None = None, seed: int | None = None) -> "ScenarioConfig":
        """Копия с каталогом и зерном из командной строки."""
        config = self
        if output_dir is not None:
            config = replace(config, output_dir=output_dir)
        if seed is not None:
            evaluation = replace(config.evaluation, seeds=(seed,))
            config = replace(config, seed=seed, evaluation=evaluation)
        return config

    def to_dict(self) -> dict[str, Any]:
        """Разрешенная конфигурация для манифеста."""
        return {
            "scenario": self.scenario,
            "description": self.description,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "world": self.world.to_dict(),
            "transforms": [t.to_dict() for t in self.world.transforms],
            "models": [m.to_dict() for m in self.models],
            "rules": [r.to_dict() for r in self.rules],
            "posthoc": self.posthoc.to_dict(),
            "evaluation": self.evaluation.to_dict(),
        }


def resolve_config_path(reference: str | Path) -> Path:
    """Путь к файлу или имя встроенного сценария."""
    path = Path(reference)
    if path.is_file():
        return path
    bundled = BUNDLED_DIR / f"{reference}.json"
    if bundled.exists():
        return bundled
    msg = f"файл конфигурации {reference} не найден и нет встроенного сценария с таким именем"
    raise ConfigurationError(msg)


def bundled_scenarios() -> list[str]:
    """Имена встроенных сценариев."""
    return sorted(path.stem for path in BUNDLED_DIR.glob("*.json"))


def load_scenario(reference: str | Path) -> ScenarioConfig:
    """Прочитать сценарий из файла, по имени встроенного или из манифеста запуска."""
    path = resolve_config_path(reference)
    data = _read_config_json(path)
    if not isinstance(data, dict):
        msg = f"{path}: ожидался объект"
        raise ConfigurationError(msg)
    if "manifest_version" in data and "config" in data:
        data = data["config"]
    return ScenarioConfig.from_dict(data, path.parent)
