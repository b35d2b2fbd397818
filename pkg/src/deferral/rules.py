"""Правила отложения и входы, которые им разрешено читать."""

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np

from src.core.rng import RngSeed
from src.deferral.scores import (
    score_bayes,
    score_confidence,
    score_entropy,
    score_onehot_oracle,
    score_posthoc,
    score_prob_oracle,
    score_random,
    score_relative_confidence,
)
from src.posthoc.targets import TargetKind
from src.posthoc.trainer import PosthocModel
from src.shared.errors import ConfigurationError, ContractViolationError


class RuleKind(StrEnum):
    """Виды правил."""

    CONFIDENCE = "confidence"
    ENTROPY = "entropy"
    RANDOM = "random"
    ORACLE_ONEHOT = "oracle-onehot"
    ORACLE_PROB = "oracle-prob"
    ORACLE_RELATIVE = "oracle-relative"
    BAYES = "bayes"
    POSTHOC = "posthoc"


class InputName(StrEnum):
    """Входы стадии каскада."""

    P1 = "p1"
    P2 = "p2"
    LABELS = "labels"
    ETA = "eta"
    INDICES = "indices"


REQUIRED_INPUTS: dict[RuleKind, frozenset[InputName]] = {
    RuleKind.CONFIDENCE: frozenset({InputName.P1}),
    RuleKind.ENTROPY: frozenset({InputName.P1}),
    RuleKind.RANDOM: frozenset({InputName.INDICES}),
    RuleKind.ORACLE_ONEHOT: frozenset({InputName.P1, InputName.P2, InputName.LABELS}),
    RuleKind.ORACLE_PROB: frozenset({InputName.P1, InputName.P2, InputName.LABELS}),
    RuleKind.ORACLE_RELATIVE: frozenset({InputName.P1, InputName.P2}),
    RuleKind.BAYES: frozenset({InputName.P1, InputName.P2, InputName.ETA}),
    RuleKind.POSTHOC: frozenset({InputName.P1}),
}

DEPLOYABLE_KINDS = frozenset({RuleKind.CONFIDENCE, RuleKind.ENTROPY, RuleKind.RANDOM, RuleKind.POSTHOC})

# Для этих видов порог пользователя c означает «отложить, если величина < c»
_NEGATED_KINDS = frozenset({RuleKind.CONFIDENCE, RuleKind.RANDOM})

Provider = np.ndarray | Callable[[], np.ndarray]


class StageInputs:
    """Ленивые входы одной стадии для подмножества примеров.

    Провайдер может быть массивом или функцией без аргументов; функция
    вызывается при первом чтении. После ``restrict`` чтение входа вне
    разрешенного набора - нарушение контракта.
    """

    def __init__(self, allowed: frozenset[InputName] | None = None, **providers: Provider | None) -> None:  # noqa: D107
        unknown = set(providers) - {name.value for name in InputName}
        if unknown:
            msg = f"неизвестные входы стадии: {sorted(unknown)}"
            raise ConfigurationError(msg)
        self._providers = {InputName(name): value for name, value in providers.items() if value is not None}
        self._cache: dict[InputName, np.ndarray] = {}
        self._allowed = allowed
        self.reads: set[InputName] = set()

    def restrict(self, allowed: frozenset[InputName]) -> "StageInputs":
        """Представление тех же входов с ограниченным доступом (кэш общий)."""
        view = StageInputs.__new__(StageInputs)
        view._providers = self._providers
        view._cache = self._cache
        view._allowed = allowed
        view.reads = self.reads
        return view

    def get(self, name: InputName) -> np.ndarray:
        """Прочитать вход."""
        name = InputName(name)
        if self._allowed is not None and name not in self._allowed:
            msg = f"правило прочитало необъявленный вход {name.value}"
            raise ContractViolationError(msg)
        if name not in self._cache:
            provider = self._providers.get(name)
            if provider is None:
                msg = f"вход {name.value} недоступен на этой стадии"
                raise ConfigurationError(msg)
            self._cache[name] = np.asarray(provider() if callable(provider) else provider)
        self.reads.add(name)
        return self._cache[name]

    @property
    def p1(self) -> np.ndarray:  # noqa: D102
        return self.get(InputName.P1)

    @property
    def p2(self) -> np.ndarray:  # noqa: D102
        return self.get(InputName.P2)

    @property
    def labels(self) -> np.ndarray:  # noqa: D102
        return self.get(InputName.LABELS)

    @property
    def eta(self) -> np.ndarray:  # noqa: D102
        return self.get(InputName.ETA)

    @property
    def indices(self) -> np.ndarray:  # noqa: D102
        return self.get(InputName.INDICES)


@dataclass(frozen=True)
class DeferralRule:
    """Правило r: оценка по разрешенным входам и порог «отложить, если оценка > порога».

    Пороги задаются в единицах пользователя: для confidence - уровень
    уверенности c (отложить, если max p1 < c), для random - доля τ.
    """

    kind: RuleKind
    target_kind: TargetKind | None = None
    posthoc_model: PosthocModel | None = field(default=None, compare=False, repr=False)
    seed: RngSeed = field(default_factory=lambda: RngSeed(0))
    name: str = ""

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "kind", RuleKind(self.kind))
        if self.kind is RuleKind.POSTHOC:
            if self.posthoc_model is None:
                msg = "правилу posthoc нужна обученная модель"
                raise ConfigurationError(msg)
            target = TargetKind(self.target_kind or self.posthoc_model.target_kind)
            if target is not self.posthoc_model.target_kind:
                msg = f"вид цели {target.value} не совпадает с моделью ({self.posthoc_model.target_kind.value})"
                raise ConfigurationError(msg)
            object.__setattr__(self, "target_kind", target)
        if not self.name:
            label = f"posthoc-{self.target_kind.value}" if self.kind is RuleKind.POSTHOC else self.kind.value
            object.__setattr__(self, "name", label)

    @property
    def required_inputs(self) -> frozenset[InputName]:
        """Входы, которые правило читает."""
        return REQUIRED_INPUTS[self.kind]

    @property
    def deployable(self) -> bool:
        """Можно ли применять без вызова следующей модели и без меток."""
        return self.kind in DEPLOYABLE_KINDS

    def score(self, inputs: StageInputs) -> np.ndarray:
        """Оценки для примеров стадии."""
        view = inputs.restrict(self.required_inputs)
        match self.kind:
            case RuleKind.CONFIDENCE:
                values = score_confidence(view.p1)
            case RuleKind.ENTROPY:
                values = score_entropy(view.p1)
            case RuleKind.RANDOM:
                values = score_random(self.seed.uniforms_at(view.indices))
            case RuleKind.ORACLE_ONEHOT:
                values = score_onehot_oracle(view.labels, np.argmax(view.p1, axis=1), np.argmax(view.p2, axis=1))
            case RuleKind.ORACLE_PROB:
                values = score_prob_oracle(view.p1, view.p2, view.labels)
            case RuleKind.ORACLE_RELATIVE:
                values = score_relative_confidence(view.p1, view.p2)
            case RuleKind.BAYES:
                values = score_bayes(view.eta, np.argmax(view.p1, axis=1), np.argmax(view.p2, axis=1))
            case RuleKind.POSTHOC:
                values = score_posthoc(self.posthoc_model, view.p1, self.target_kind)
        return np.atleast_1d(np.asarray(values, dtype=np.float64))

    def score_threshold(self, threshold: float) -> float:
        """Порог пользователя во внутренних единицах оценки."""
        return -threshold if self.kind in _NEGATED_KINDS else threshold

    def user_threshold(self, score_threshold: float) -> float:
        """Обратное к ``score_threshold``."""
        return -score_threshold if self.kind in _NEGATED_KINDS else score_threshold

    def decide(self, inputs: StageInputs, threshold: float) -> np.ndarray:
        """Маска отложения: оценка строго больше порога."""
        return self.score(inputs) > self.score_threshold(threshold)

    def to_dict(self) -> dict[str, Any]:
        """Описание правила для манифеста."""
        result: dict[str, Any] = {"kind": self.kind.value, "name": self.name}
        if self.target_kind is not None:
            result["target"] = self.target_kind.value
        if self.kind is RuleKind.RANDOM:
            result["seed"] = self.seed.seed
        return result
