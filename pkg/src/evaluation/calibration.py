"""Корзины уверенности первой модели и частота события «h1 ошиблась, h2 права»."""

from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from src.config import logger
from src.core.dataset import Dataset
from src.evaluation.risk import two_model_outputs
from src.models.classifiers import Classifier
from src.storage.columns import CsvHeaders

DEFAULT_BUCKETS = 10


@dataclass(frozen=True)
class CalibrationBucket:
    """Корзина [lo, hi); последняя включает 1.0."""

    lo: float
    hi: float
    count: int
    mean_conf: float
    event_freq: float


@dataclass
class CalibrationReport:
    """Отчет по корзинам равной ширины на [0, 1]."""

    buckets: list[CalibrationBucket] = field(default_factory=list)

    def __len__(self) -> int:  # noqa: D105
        return len(self.buckets)

    @property
    def counts(self) -> np.ndarray:  # noqa: D102
        return np.array([b.count for b in self.buckets], dtype=np.int64)

    @property
    def total(self) -> int:  # noqa: D102
        return int(self.counts.sum())

    def to_frame(self) -> pd.DataFrame:
        """Таблица в формате calibration_{seed}.csv."""
        rows = [
            {
                "bucket_lo": b.lo,
                "bucket_hi": b.hi,
                "count": b.count,
                "mean_conf": b.mean_conf,
                "event_freq": b.event_freq,
            }
            for b in self.buckets
        ]
        return pd.DataFrame(rows, columns=CsvHeaders.CALIBRATION)


def bucket_index(confidence: np.ndarray, num_buckets: int = DEFAULT_BUCKETS) -> np.ndarray:
    """min(floor(q·B), B − 1)."""
    return np.minimum(np.floor(np.asarray(confidence) * num_buckets).astype(np.int64), num_buckets - 1)


def calibration_report(
    ds: Dataset,
    model1: Classifier,
    model2: Classifier,
    num_buckets: int = DEFAULT_BUCKETS,
) -> CalibrationReport:
    """Разбить примеры по max p1 и посчитать частоту {h1(x) ≠ y ∧ h2(x) = y} в каждой корзине."""
    outputs = two_model_outputs(ds, model1, model2)
    confidence = outputs.p1.max(axis=1)
    event = (1.0 - outputs.correct1) * outputs.correct2
    index = bucket_index(confidence, num_buckets)
    counts = np.bincount(index, minlength=num_buckets)
    conf_sums = np.bincount(index, weights=confidence, minlength=num_buckets)
    event_sums = np.bincount(index, weights=event, minlength=num_buckets)
    edges = np.linspace(0.0, 1.0, num_buckets + 1)

    report = CalibrationReport()
    empty = 0
    for b in range(num_buckets):
        count = int(counts[b])
        if count == 0:
            empty += 1
            mean_conf = event_freq = float("nan")
        else:
            mean_conf = float(conf_sums[b] / count)
            event_freq = float(event_sums[b] / count)
        report.buckets.append(CalibrationBucket(float(edges[b]), float(edges[b + 1]), count, mean_conf, event_freq))
    if empty:
        logger.warning(f"Калибровка: {empty} из {num_buckets} корзин пусты")
    return report
