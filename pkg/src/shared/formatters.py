"""Объединенные форматеры для всего приложения."""

from collections.abc import Sequence
from typing import Any


class Formatters:
    """Объединенный класс форматеров."""

    # Формат чисел в CSV: короткий и одинаковый на всех платформах
    CSV_FLOAT_FORMAT = "%.12g"

    @staticmethod
    def format_rate(rate: float) -> str:
        """Форматировать долю отложения."""
        return f"{rate:.2f}"

    @staticmethod
    def format_accuracy(value: float) -> str:
        """Форматировать точность."""
        return f"{value:.4f}"

    @staticmethod
    def format_delta(value: float) -> str:
        """Форматировать разность со знаком."""
        return f"{value:+.4f}"

    @staticmethod
    def format_compare_table(
        scenario: str,
        rows: Sequence[dict[str, Any]],
        missing: Sequence[str] = (),
    ) -> str:
        """Таблица разностей точности между двумя запусками."""
        if not rows:
            return f"🚫 Нет общих правил для сравнения в сценарии {scenario}"

        width = max(len("правило"), *(len(row["rule"]) for row in rows))
        header = f"{'правило':<{width}}  α     A       B       Δ        ±3SE    "
        lines = [f"📊 Сравнение запусков: {scenario}", "", header, "-" * len(header)]
        for row in rows:
            mark = "✅" if row["within_band"] else "⚠️"
            lines.append(
                f"{row['rule']:<{width}}  "
                f"{Formatters.format_rate(row['alpha'])}  "
                f"{Formatters.format_accuracy(row['accuracy_a'])}  "
                f"{Formatters.format_accuracy(row['accuracy_b'])}  "
                f"{Formatters.format_delta(row['delta'])}  "
                f"{Formatters.format_accuracy(row['band'])}  {mark}"
            )
        if missing:
            lines += ["", f"Правила только в одном из запусков: {', '.join(missing)}"]
        return "\n".join(lines)

    @staticmethod
    def format_run_summary(data: dict[str, Any]) -> str:
        """Сообщение о завершенном запуске."""
        lines = [
            f"✅ <{data['scenario']}> завершен",
            "",
            f"📁 Каталог: {data['output_dir']}",
            f"🎲 Зерна: {', '.join(str(seed) for seed in data['seeds'])}",
            f"📈 Кривых: {data['curves']}",
            f"🗂 Файлов: {data['files']}",
        ]
        return "\n".join(lines)
