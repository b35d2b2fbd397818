"""Чтение описаний миров из JSON."""

import json
from pathlib import Path
from typing import Any

from src.shared.errors import ArtifactIOError, ConfigurationError
from src.worlds.base import SyntheticWorld
from src.worlds.discrete import DiscreteWorld
from src.worlds.gaussian import GaussianMixtureWorld
from src.worlds.generators import make_clustered_world
from src.worlds.noisy import NoisyLabelWorld
from src.worlds.transforms import ScenarioTransform

_GENERATOR_KEYS = {
    "num_classes",
    "num_clusters",
    "view_dims",
    "extra_dims",
    "cluster_radius",
    "class_jitter",
    "code_scale",
    "stddev",
    "seed",
}
_KEYS_BY_KIND = {
    "discrete": {"kind", "num_classes", "support"},
    "gaussian-mixture": {"kind", "means", "stddevs", "priors", "generator"},
    "label-noise": {"kind", "base", "transform"},
}


def _check_keys(data: dict[str, Any], allowed: set[str], where: str) -> None:
    unknown = set(data) - allowed
    if unknown:
        msg = f"{where}: неизвестные ключи {sorted(unknown)}"
        raise ConfigurationError(msg)


def world_from_dict(data: dict[str, Any], where: str = "world") -> SyntheticWorld:
    """Построить мир по JSON-описанию (без секции transforms)."""
    if not isinstance(data, dict):
        msg = f"{where}: ожидался объект"
        raise ConfigurationError(msg)
    kind = data.get("kind")
    if kind not in _KEYS_BY_KIND:
        msg = f"{where}.kind: неизвестный вид мира {kind!r}"
        raise ConfigurationError(msg)
    _check_keys(data, _KEYS_BY_KIND[kind] | {"transforms"}, where)

    try:
        if kind == "discrete":
            support = data["support"]
            for i, item in enumerate(support):
                _check_keys(item, {"x", "probability", "posterior"}, f"{where}.support[{i}]")
            world = DiscreteWorld(
                [item["x"] for item in support],
                [item["probability"] for item in support],
                [item["posterior"] for item in support],
            )
            if "num_classes" in data and data["num_classes"] != world.num_classes:
                msg = f"{where}.num_classes: {data['num_classes']} не совпадает с длиной апостериорных"
                raise ConfigurationError(msg)
            return world
        if kind == "label-noise":
            base = world_from_dict(data["base"], f"{where}.base")
            return NoisyLabelWorld(base, ScenarioTransform.from_dict(data["transform"], f"{where}.transform"))
        if "generator" in data:
            _check_keys(data, {"kind", "generator", "transforms"}, where)
            _check_keys(data["generator"], _GENERATOR_KEYS, f"{where}.generator")
            return make_clustered_world(**data["generator"])
        return GaussianMixtureWorld(data["means"], data["stddevs"], data["priors"])
    except KeyError as e:
        msg = f"{where}: отсутствует обязательное поле {e.args[0]!r}"
        raise ConfigurationError(msg) from None
    except (TypeError, ValueError) as e:
        msg = f"{where}: {e}"
        raise ConfigurationError(msg) from e


def transforms_from_list(items: list[dict[str, Any]], where: str = "transforms") -> list[ScenarioTransform]:
    """Разобрать список преобразований."""
    if not isinstance(items, list):
        msg = f"{where}: ожидался список"
        raise ConfigurationError(msg)
    return [ScenarioTransform.from_dict(item, f"{where}[{i}]") for i, item in enumerate(items)]


def load_world_file(path: str | Path) -> tuple[SyntheticWorld, list[ScenarioTransform]]:
    """Прочитать файл мира вместе с его секцией transforms."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        msg = f"не удалось прочитать файл мира {path}: {e}"
        raise ArtifactIOError(msg) from e
    except json.JSONDecodeError as e:
        msg = f"{path}: некорректный JSON (строка {e.lineno}, столбец {e.colno})"
        raise ConfigurationError(msg) from e
    world = world_from_dict(data, str(path))
    return world, transforms_from_list(data.get("transforms", []), f"{path}.transforms")
