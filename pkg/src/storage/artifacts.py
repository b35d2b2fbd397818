"""Каталог артефактов запуска: запись через промежуточный каталог и манифест."""

import hashlib
import json
import os
import shutil
import sys
import tempfile
from collections.abc import Iterator
from contextlib import contextmanager
from importlib import metadata
from pathlib import Path
from typing import Any

import matplotlib
import numpy as np
import pandas as pd
import scipy

from src.config import logger
from src.shared.errors import ArtifactIOError
from src.shared.formatters import Formatters
from src.storage.columns import CsvHeaders

MANIFEST_VERSION = 1


def canonical_json(data: Any) -> str:
    """JSON с отсортированными ключами и без пробелов."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def config_hash(data: dict[str, Any]) -> str:
    """sha256 канонического JSON конфигурации."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def file_sha256(path: Path) -> str:
    """sha256 содержимого файла."""
    digest = hashlib.sha256()
    with path.open("rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def package_versions() -> dict[str, str]:
    """Версии интерпретатора и числовых библиотек."""
    try:
        own = metadata.version("cascadelab")
    except metadata.PackageNotFoundError:
        own = "unknown"
    return {
        "cascadelab": own,
        "python": ".".join(str(part) for part in sys.version_info[:3]),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "matplotlib": matplotlib.__version__,
    }


class ArtifactStore:
    """Класс для записи артефактов одного запуска.

    Все файлы пишутся в скрытый промежуточный каталог рядом с целевым;
    ``commit`` заменяет целевой каталог целиком, ``abort`` удаляет
    промежуточный. Незавершенный запуск не оставляет файлов в целевом каталоге.
    """

    def __init__(self, output_dir: str | Path) -> None:  # noqa: D107
        self.output_dir = Path(output_dir)
        self.staging: Path | None = None

    def open(self) -> None:
        """Создать промежуточный каталог."""
        try:
            self.output_dir.parent.mkdir(parents=True, exist_ok=True)
            self.staging = Path(tempfile.mkdtemp(prefix=f".{self.output_dir.name}.", dir=self.output_dir.parent))
        except OSError as e:
            msg = f"не удалось создать каталог для {self.output_dir}: {e}"
            raise ArtifactIOError(msg) from e
        logger.debug(f"Промежуточный каталог {self.staging}")

    def commit(self) -> None:
        """Атомарно заменить целевой каталог промежуточным."""
        staging = self._require_staging()
        try:
            if self.output_dir.exists():
                shutil.rmtree(self.output_dir)
            os.replace(staging, self.output_dir)
        except OSError as e:
            msg = f"не удалось сохранить результаты в {self.output_dir}: {e}"
            raise ArtifactIOError(msg) from e
        self.staging = None
        logger.info(f"Артефакты записаны в {self.output_dir}")

    def abort(self) -> None:
        """Удалить промежуточный каталог."""
        if self.staging is not None:
            shutil.rmtree(self.staging, ignore_errors=True)
            self.staging = None

    @contextmanager
    def transaction(self) -> Iterator["ArtifactStore"]:
        """Контекстный менеджер: commit при успехе, abort при любой ошибке."""
        self.open()
        try:
            yield self
        except BaseException:
            self.abort()
            raise
        self.commit()

    def _require_staging(self) -> Path:
        if self.staging is None:
            msg = "каталог артефактов не открыт"
            raise ArtifactIOError(msg)
        return self.staging

    def path(self, name: str) -> Path:
        """Путь внутри промежуточного каталога (родительские каталоги создаются)."""
        target = self._require_staging() / name
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            msg = f"не удалось создать каталог {target.parent}: {e}"
            raise ArtifactIOError(msg) from e
        return target

    def write_csv(self, name: str, frame: pd.DataFrame) -> Path:
        """Записать таблицу; NaN пишется пустой ячейкой."""
        target = self.path(name)
        try:
            frame.to_csv(
                target,
                index=False,
                lineterminator="\n",
                encoding="utf-8",
                na_rep="",
                float_format=Formatters.CSV_FLOAT_FORMAT,
            )
        except OSError as e:
            msg = f"не удалось записать {target}: {e}"
            raise ArtifactIOError(msg) from e
        return target

    def write_json(self, name: str, data: Any) -> Path:
        """Записать JSON с отсортированными ключами."""
        target = self.path(name)
        try:
            target.write_text(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
        except OSError as e:
            msg = f"не удалось записать {target}: {e}"
            raise ArtifactIOError(msg) from e
        return target

    def files(self) -> list[str]:
        """Относительные пути записанных файлов в порядке сортировки."""
        staging = self._require_staging()
        return sorted(p.relative_to(staging).as_posix() for p in staging.rglob("*") if p.is_file())

    def write_manifest(self, scenario: str, config: dict[str, Any], seeds: list[int], digest: str) -> Path:
        """Манифест: хэш и полный текст конфигурации, зерна, версии и sha256 файлов."""
        staging = self._require_staging()
        digests = {name: file_sha256(staging / name) for name in self.files() if name != CsvHeaders.MANIFEST_FILE}
        manifest = {
            "manifest_version": MANIFEST_VERSION,
            "scenario": scenario,
            "config_hash": digest,
            "config": config,
            "seeds": seeds,
            "versions": package_versions(),
            "files": digests,
        }
        return self.write_json(CsvHeaders.MANIFEST_FILE, manifest)


def read_json(path: str | Path) -> Any:
    """Прочитать JSON-файл; ошибки чтения и разбора - ошибки ввода-вывода."""
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        msg = f"не удалось прочитать {path}: {e}"
        raise ArtifactIOError(msg) from e
    except json.JSONDecodeError as e:
        msg = f"{path}: некорректный JSON (строка {e.lineno}, столбец {e.colno})"
        raise ArtifactIOError(msg) from e


def read_manifest(path: str | Path) -> dict[str, Any]:
    """Прочитать манифест запуска (путь к файлу или к каталогу запуска)."""
    path = Path(path)
    if path.is_dir():
        path /= CsvHeaders.MANIFEST_FILE
    manifest = read_json(path)
    if not isinstance(manifest, dict) or "config" not in manifest or "scenario" not in manifest:
        msg = f"{path}: это не манифест запуска"
        raise ArtifactIOError(msg)
    return manifest


def read_curves(path: str | Path) -> pd.DataFrame:
    """Прочитать curves.csv и проверить заголовок."""
    try:
        frame = pd.read_csv(path, dtype={"rule": str, "scenario": str, "threshold": str}, encoding="utf-8")
    except pd.errors.EmptyDataError:
        frame = pd.DataFrame()
    except (OSError, pd.errors.ParserError) as e:
        msg = f"не удалось прочитать кривые {path}: {e}"
        raise ArtifactIOError(msg) from e
    if tuple(frame.columns) != CsvHeaders.CURVES:
        msg = f"{path}: ожидался заголовок {','.join(CsvHeaders.CURVES)}"
        raise ArtifactIOError(msg)
    if frame.empty:
        msg = f"{path}: файл кривых пуст"
        raise ArtifactIOError(msg)
    return frame
