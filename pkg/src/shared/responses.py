"""Стандартизированные ответы команд CLI."""

from dataclasses import dataclass
from typing import Any


@dataclass
class RunResponse:
    """Результат команды с кодом выхода."""

    success: bool
    message: str = ""
    data: dict[str, Any] | None = None
    exit_code: int = 0

    @classmethod
    def success_response(cls, message: str = "", data: dict[str, Any] | None = None) -> "RunResponse":
        """Создать успешный ответ."""
        return cls(success=True, message=message, data=data, exit_code=0)

    @classmethod
    def error_response(cls, message: str, exit_code: int = 1, data: dict[str, Any] | None = None) -> "RunResponse":
        """Создать ответ с ошибкой."""
        return cls(success=False, message=message, data=data, exit_code=exit_code)

    def to_dict(self) -> dict[str, Any]:
        """Конвертировать в словарь."""
        result = {
            "success": self.success,
            "message": self.message,
            "exit_code": self.exit_code,
        }
        if self.data:
            result.update(self.data)
        return result
