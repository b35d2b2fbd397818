"""Иерархия исключений с кодами выхода CLI."""


class CascadeLabError(Exception):
    """Базовая ошибка проекта."""

    exit_code: int = 1


class ConfigurationError(CascadeLabError):
    """Некорректная конфигурация или нарушение предусловий."""

    exit_code = 2


class InvalidDistributionError(ConfigurationError):
    """Вектор не задает распределение на симплексе."""


class OutOfSupportError(ConfigurationError):
    """Точка не принадлежит носителю дискретного мира."""


class SupportTooLargeError(ConfigurationError):
    """Носитель слишком велик для полного перебора."""


class IncompatibleRunsError(ConfigurationError):
    """Запуски нельзя сравнивать."""


class ContractViolationError(ConfigurationError):
    """Правило прочитало вход, который оно не объявляло."""


class ShapeError(CascadeLabError):
    """Несовпадение размерностей, числа классов или вида цели."""

    exit_code = 2


class TrainingDivergenceError(CascadeLabError):
    """Обучение разошлось: появились нечисловые значения."""

    exit_code = 3


class ArtifactIOError(CascadeLabError):
    """Ошибка чтения или записи артефактов."""

    exit_code = 4


class ModelFormatError(ArtifactIOError):
    """Файл модели поврежден."""

    def __init__(self, message: str, location: str = "") -> None:  # noqa: D107
        self.location = location
        super().__init__(f"{message} (в {location})" if location else message)


class UnsupportedVersionError(ArtifactIOError):
    """Неподдерживаемая версия формата файла."""
