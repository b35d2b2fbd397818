"""Сравнение двух запусков по точности на фиксированных долях отложения."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from src.config import logger
from src.shared.errors import IncompatibleRunsError
from src.shared.formatters import Formatters
from src.storage.artifacts import read_curves, read_manifest
from src.storage.columns import CsvHeaders

COMPARE_RATES = (0.1, 0.3, 0.5)
BAND_WIDTH = 3.0


@dataclass
class CompareReport:
    """Строки сравнения и правила, встречающиеся лишь в одном запуске."""

    scenario: str
    rows: list[dict[str, Any]] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)

    @property
    def max_abs_delta(self) -> float:  # noqa: D102
        return max((abs(row["delta"]) for row in self.rows), default=0.0)

    @property
    def all_within_band(self) -> bool:  # noqa: D102
        return all(row["within_band"] for row in self.rows)

    def to_text(self) -> str:
        """Текстовая таблица."""
        return Formatters.format_compare_table(self.scenario, self.rows, self.missing)


def _run_paths(reference: str | Path) -> tuple[dict[str, Any], Path]:
    path = Path(reference)
    manifest = read_manifest(path)
    run_dir = path if path.is_dir() else path.parent
    return manifest, run_dir / CsvHeaders.CURVES_FILE


def _accuracy_at(frame: pd.DataFrame, rule: str, alpha: float) -> float:
    """Средняя по зернам точность, интерполированная в долю α."""
    values = []
    for _, group in frame[frame["rule"] == rule].groupby("seed", sort=True):
        group = group.sort_values("deferral_rate", kind="stable")
        values.append(float(np.interp(alpha, group["deferral_rate"].to_numpy(), group["accuracy"].to_numpy())))
    return float(np.mean(values))


def _sample_size(manifest: dict[str, Any]) -> int:
    """Число тестовых примеров за все зерна."""
    evaluation = manifest["config"].get("evaluation", {})
    seeds = manifest.get("seeds") or [0]
    return int(evaluation.get("num_test", 1)) * len(seeds)


def compare_report(manifest_a: str | Path, manifest_b: str | Path) -> CompareReport:
    """Разности точности B − A по правилам при α ∈ {0.1, 0.3, 0.5} с полосой ±3 стандартные ошибки."""
    meta_a, curves_a = _run_paths(manifest_a)
    meta_b, curves_b = _run_paths(manifest_b)
    if meta_a["scenario"] != meta_b["scenario"]:
        msg = f"запуски относятся к разным сценариям: {meta_a['scenario']} и {meta_b['scenario']}"
        raise IncompatibleRunsError(msg)

    frame_a, frame_b = read_curves(curves_a), read_curves(curves_b)
    rules_a = list(dict.fromkeys(frame_a["rule"]))
    rules_b = set(frame_b["rule"])
    n_a, n_b = _sample_size(meta_a), _sample_size(meta_b)

    report = CompareReport(meta_a["scenario"])
    report.missing = sorted(set(rules_a) ^ rules_b)
    for rule in rules_a:
        if rule not in rules_b:
            continue
        for alpha in COMPARE_RATES:
            acc_a = _accuracy_at(frame_a, rule, alpha)
            acc_b = _accuracy_at(frame_b, rule, alpha)
            band = BAND_WIDTH * float(np.sqrt(acc_a * (1 - acc_a) / n_a + acc_b * (1 - acc_b) / n_b))
            delta = acc_b - acc_a
            report.rows.append(
                {
                    "rule": rule,
                    "alpha": alpha,
                    "accuracy_a": acc_a,
                    "accuracy_b": acc_b,
                    "delta": delta,
                    "band": band,
                    "within_band": abs(delta) <= band,
                }
            )
    logger.info(f"Сравнение {meta_a['scenario']}: {len(report.rows)} строк, max |Δ| = {report.max_abs_delta:.4f}")
    return report
