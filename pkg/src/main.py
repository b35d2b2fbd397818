"""Основной скрипт командной строки cascadelab."""

import argparse
import sys
from collections.abc import Sequence

from src.config import logger
from src.services.compare import compare_report
from src.services.plotting import emit_plot
from src.services.runner import run_scenario
from src.services.scenario import bundled_scenarios
from src.shared.decorators import handle_run_errors
from src.shared.responses import RunResponse


@handle_run_errors("Не удалось построить график")
def plot_command(csv_paths: Sequence[str], out: str, title: str = "") -> RunResponse:
    """Нарисовать SVG по CSV кривых."""
    path = emit_plot(csv_paths, out, title)
    return RunResponse.success_response(f"🖼 График записан в {path}", {"output": str(path)})


@handle_run_errors("Не удалось сравнить запуски")
def compare_command(manifest_a: str, manifest_b: str) -> RunResponse:
    """Сравнить два запуска по манифестам."""
    report = compare_report(manifest_a, manifest_b)
    return RunResponse.success_response(
        report.to_text(),
        {"rows": len(report.rows), "within_band": report.all_within_band},
    )


def build_parser() -> argparse.ArgumentParser:
    """Разбор аргументов командной строки."""
    parser = argparse.ArgumentParser(prog="cascadelab", description="Кривые отложения для каскадов классификаторов")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="выполнить сценарий")
    run.add_argument(
        "config",
        help=f"JSON сценария, манифест запуска или имя встроенного ({', '.join(bundled_scenarios())})",
    )
    run.add_argument("--out", default=None, help="каталог результатов")
    run.add_argument("--seed", type=int, default=None, help="одно зерно вместо evaluation.seeds")

    plot = commands.add_parser("plot", help="нарисовать кривые в SVG")
    plot.add_argument("csv", nargs="+", help="файлы curves.csv")
    plot.add_argument("--out", required=True, help="путь к SVG")
    plot.add_argument("--title", default="", help="заголовок графика")

    compare = commands.add_parser("compare", help="сравнить два запуска")
    compare.add_argument("manifest_a")
    compare.add_argument("manifest_b")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Главная функция; возвращает код выхода."""
    args = build_parser().parse_args(argv)
    match args.command:
        case "run":
            response = run_scenario(args.config, args.out, args.seed)
        case "plot":
            response = plot_command(args.csv, args.out, args.title)
        case "compare":
            response = compare_command(args.manifest_a, args.manifest_b)

    if response.success:
        print(response.message)  # noqa: T201
    else:
        logger.error(f"❌ {response.message}")
    return response.exit_code


def cli() -> None:
    """Точка входа консольного скрипта."""
    sys.exit(main())


if __name__ == "__main__":
    cli()
