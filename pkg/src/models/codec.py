"""Кодирование массивов float64 в base64 (little-endian) и обратно."""

import base64
import binascii
from typing import Any

import numpy as np

from src.models.mlp import MlpModel
from src.shared.errors import ModelFormatError, ShapeError, UnsupportedVersionError

MODEL_FORMAT_VERSION = 1
_LITTLE_F64 = np.dtype("<f8")


def check_format_version(data: dict[str, Any]) -> None:
    """Проверить поле format_version."""
    version = data.get("format_version")
    if version is None:
        msg = "отсутствует format_version"
        raise ModelFormatError(msg, "format_version")
    if version != MODEL_FORMAT_VERSION:
        msg = f"версия формата {version!r} не поддерживается (ожидалась {MODEL_FORMAT_VERSION})"
        raise UnsupportedVersionError(msg)


def encode_array(array: np.ndarray) -> str:
    """Сырые байты массива в порядке строк."""
    return base64.b64encode(np.ascontiguousarray(array, dtype=_LITTLE_F64).tobytes()).decode("ascii")


def decode_array(text: Any, shape: tuple[int, ...], location: str) -> np.ndarray:
    """Прочитать массив заданной формы; ошибки указывают место в файле."""
    if not isinstance(text, str):
        msg = "ожидалась строка base64"
        raise ModelFormatError(msg, location)
    try:
        raw = base64.b64decode(text.encode("ascii"), validate=True)
    except (binascii.Error, UnicodeEncodeError) as e:
        msg = f"некорректный base64: {e}"
        raise ModelFormatError(msg, location) from e
    expected = int(np.prod(shape)) * _LITTLE_F64.itemsize
    if len(raw) != expected:
        msg = f"ожидалось {expected} байт для формы {shape}, получено {len(raw)}"
        raise ModelFormatError(msg, location)
    return np.frombuffer(raw, dtype=_LITTLE_F64).astype(np.float64).reshape(shape)


def mlp_to_dict(model: MlpModel) -> dict[str, Any]:
    """Архитектура и параметры сети."""
    return {
        "layer_sizes": list(model.layer_sizes),
        "weights": [encode_array(w) for w in model.weights],
        "biases": [encode_array(b) for b in model.biases],
    }


def _layer_sizes(data: dict[str, Any]) -> tuple[int, ...]:
    sizes = data.get("layer_sizes")
    valid = isinstance(sizes, list) and len(sizes) >= 2  # noqa: PLR2004
    valid = valid and all(isinstance(s, int) and s > 0 for s in sizes)
    if not valid:
        msg = "ожидался список положительных размеров слоев"
        raise ModelFormatError(msg, "layer_sizes")
    return tuple(sizes)


def mlp_from_dict(data: dict[str, Any]) -> MlpModel:
    """Восстановить сеть; формы массивов выводятся из layer_sizes."""
    sizes = _layer_sizes(data)
    weights, biases = data.get("weights"), data.get("biases")
    for key, value in (("weights", weights), ("biases", biases)):
        if not isinstance(value, list) or len(value) != len(sizes) - 1:
            msg = f"ожидался список из {len(sizes) - 1} массивов"
            raise ModelFormatError(msg, key)
    decoded_w = [
        decode_array(text, (fan_in, fan_out), f"weights[{i}]")
        for i, (text, fan_in, fan_out) in enumerate(zip(weights, sizes[:-1], sizes[1:], strict=True))
    ]
    decoded_b = [
        decode_array(text, (size,), f"biases[{i}]")
        for i, (text, size) in enumerate(zip(biases, sizes[1:], strict=True))
    ]
    try:
        return MlpModel(sizes, decoded_w, decoded_b)
    except ShapeError as e:
        raise ModelFormatError(str(e), "weights") from e
