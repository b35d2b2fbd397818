"""Общие фикстуры тестов."""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from src.models.classifiers import AnalyticClassifier
from src.worlds.discrete import DiscreteWorld
from src.worlds.generators import make_clustered_world


def random_discrete_world(rng: np.random.Generator, size: int, num_classes: int = 3) -> DiscreteWorld:
    """Дискретный мир со случайными маргиналами и апостериорными."""
    points = np.arange(size, dtype=np.float64)
    marginals = rng.dirichlet(np.ones(size))
    posteriors = rng.dirichlet(np.ones(num_classes), size=size)
    return DiscreteWorld(points, marginals, posteriors)


def belief_model(world: DiscreteWorld, beliefs: np.ndarray | list[list[float]], name: str = "") -> AnalyticClassifier:
    """Модель с заданными выходами в точках носителя."""
    return AnalyticClassifier(world.with_posteriors(np.asarray(beliefs, dtype=np.float64)), name=name)


def random_belief_model(world: DiscreteWorld, rng: np.random.Generator, name: str = "") -> AnalyticClassifier:
    """Модель со случайными выходами в точках носителя."""
    return belief_model(world, rng.dirichlet(np.ones(world.num_classes), size=world.support_size), name)


@pytest.fixture
def rng() -> np.random.Generator:
    """Генератор numpy с фиксированным зерном."""
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def clustered_world():
    """Маленький кластерный мир: 6 классов, 2 кластера, 4 координаты."""
    return make_clustered_world(num_classes=6, num_clusters=2, view_dims=2, extra_dims=2, seed=3)


def tiny_scenario(**overrides: Any) -> dict[str, Any]:
    """Быстрый сценарий для сквозных тестов."""
    data: dict[str, Any] = {
        "scenario": "tiny",
        "seed": 5,
        "world": {
            "kind": "gaussian-mixture",
            "generator": {"num_classes": 6, "num_clusters": 2, "view_dims": 2, "extra_dims": 2, "seed": 3},
        },
        "models": [
            {"name": "small", "kind": "analytic", "feature_dims": [0, 1]},
            {"name": "large", "kind": "analytic"},
        ],
        "rules": [
            {"kind": "confidence"},
            {"kind": "random"},
            {"kind": "bayes"},
            {"kind": "posthoc", "target": "diff-01"},
        ],
        "posthoc": {"split_fraction": 0.25, "epochs": 2, "hidden_sizes": [8]},
        "evaluation": {
            "num_train": 1200,
            "num_test": 1000,
            "rates": [0.0, 0.1, 0.25, 0.3, 0.5, 0.75, 1.0],
            "inference_costs": [1, 4],
        },
    }
    data.update(overrides)
    return data


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[..., Path]:
    """Записать сценарий в JSON во временный каталог."""

    def write(data: dict[str, Any], name: str = "scenario.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return write
