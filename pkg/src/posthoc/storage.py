"""Файл пост-хок модели.

Формат: {format_version, target_kind, num_classes, layer_sizes, weights, biases};
массивы - base64 от float64 little-endian в порядке строк.
"""

import json
from pathlib import Path
from typing import Any

from src.models.codec import MODEL_FORMAT_VERSION, check_format_version, mlp_from_dict, mlp_to_dict
from src.posthoc.targets import TargetKind
from src.posthoc.trainer import PosthocModel
from src.shared.errors import ArtifactIOError, ModelFormatError, ShapeError


def posthoc_to_dict(model: PosthocModel) -> dict[str, Any]:
    """JSON-конверт модели."""
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "target_kind": model.target_kind.value,
        "num_classes": model.num_classes,
        **mlp_to_dict(model.mlp),
    }


def posthoc_from_dict(data: Any) -> PosthocModel:
    """Разобрать конверт; ошибки указывают поле."""
    if not isinstance(data, dict):
        msg = "ожидался объект"
        raise ModelFormatError(msg, "$")
    check_format_version(data)
    try:
        kind = TargetKind(data.get("target_kind"))
    except ValueError:
        msg = f"неизвестный вид цели {data.get('target_kind')!r}"
        raise ModelFormatError(msg, "target_kind") from None
    num_classes = data.get("num_classes")
    if not isinstance(num_classes, int) or num_classes < 2:  # noqa: PLR2004
        msg = "ожидалось целое L >= 2"
        raise ModelFormatError(msg, "num_classes")
    mlp = mlp_from_dict(data)
    try:
        return PosthocModel(mlp, kind, num_classes)
    except ShapeError as e:
        raise ModelFormatError(str(e), "layer_sizes") from e


def save_model(model: PosthocModel, path: str | Path) -> None:
    """Записать модель в JSON."""
    try:
        Path(path).write_text(json.dumps(posthoc_to_dict(model), indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        msg = f"не удалось записать пост-хок модель {path}: {e}"
        raise ArtifactIOError(msg) from e


def load_model(path: str | Path) -> PosthocModel:
    """Прочитать модель из JSON."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        msg = f"не удалось прочитать пост-хок модель {path}: {e}"
        raise ArtifactIOError(msg) from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        msg = f"некорректный JSON: {e.msg}"
        raise ModelFormatError(msg, f"строка {e.lineno}, столбец {e.colno}") from e
    return posthoc_from_dict(data)
