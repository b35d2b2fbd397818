"""Скрипт для загрузки переменных окружения и настройки логгера."""

import os
import sys
from dataclasses import dataclass

from dotenv import load_dotenv
from loguru import logger

from src.shared.errors import ConfigurationError

# Загружаем переменные из .env файла
load_dotenv()


def _read_int(name: str, default: int) -> int:
    """Прочитать целое число из окружения."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        msg = f"{name} должен быть целым числом, получено {raw!r}"
        raise ConfigurationError(msg) from None
    if value < 1:
        msg = f"{name} должен быть положительным, получено {value}"
        raise ConfigurationError(msg)
    return value


@dataclass(frozen=True)
class Settings:
    """Настройки процесса."""

    threads: int
    log_level: str
    log_file: str | None
    output_root: str

    @classmethod
    def from_env(cls) -> "Settings":
        """Загрузка настроек из окружения."""
        default_threads = min(4, os.cpu_count() or 1)
        return cls(
            threads=_read_int("CASCADELAB_THREADS", default_threads),
            log_level=os.getenv("CASCADELAB_LOG_LEVEL", "INFO").upper(),
            log_file=os.getenv("CASCADELAB_LOG_FILE") or None,
            output_root=os.getenv("CASCADELAB_OUTPUT_ROOT", "runs"),
        )


def setup_logger(log_file: str | None = None, level: str = "INFO") -> logger:
    """Создаем логгер."""
    logger.remove()

    # Вывод в консоль (stdout занят отчетами CLI)
    logger.add(
        sys.stderr,
        level=level,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level}</level> | <cyan>{message}</cyan>",
    )

    # Запись в файл
    if log_file:
        logger.add(
            log_file,
            level=level,
            rotation="10 MB",
            retention="7 days",
            compression="zip",
            format="{time} | {level} | {message}",
        )

    return logger


settings = Settings.from_env()
logger = setup_logger(settings.log_file, settings.log_level)
