"""Декораторы для обработки ошибок и логирования."""

import functools
import time
from collections.abc import Callable
from typing import Any

from src.config import logger
from src.shared.errors import CascadeLabError
from src.shared.responses import RunResponse


def handle_run_errors(default_message: str = "Произошла ошибка") -> Callable:
    """Декоратор: исключения команды превращаются в RunResponse с кодом выхода."""

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> RunResponse:
            try:
                return func(*args, **kwargs)
            except CascadeLabError as e:
                logger.error(f"Ошибка в {func.__name__}: {e}")
                return RunResponse.error_response(str(e), exit_code=e.exit_code)
            except Exception as e:
                logger.exception(f"Непредвиденная ошибка в {func.__name__}")
                return RunResponse.error_response(f"{default_message}: {e}", exit_code=1)

        return wrapper

    return decorator


def log_stage_calls(func: Callable) -> Callable:
    """Декоратор для логирования этапов конвейера."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        stage_name = func.__name__
        logger.debug(f"Этап {stage_name} начат")
        started = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            logger.error(f"Ошибка на этапе {stage_name}: {e}")
            raise
        logger.debug(f"Этап {stage_name} выполнен за {time.perf_counter() - started:.2f} с")
        return result

    return wrapper
