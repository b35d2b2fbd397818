"""Параллельное выполнение с детерминированным порядком результатов."""

from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

from src.config import settings

T = TypeVar("T")
R = TypeVar("R")

# Размер порции строк для построчно-независимых вычислений
ROW_CHUNK = 8192


def ordered_map(func: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """map в пуле потоков; порядок результатов совпадает с порядком входа."""
    items = list(items)
    workers = min(threads or settings.threads, len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def map_rows(func: Callable[[np.ndarray], np.ndarray], rows: np.ndarray, threads: int | None = None) -> np.ndarray:
    """Применить func к порциям строк и склеить результаты в исходном порядке."""
    rows = np.asarray(rows)
    if rows.shape[0] <= ROW_CHUNK:
        return func(rows)
    chunks = [rows[start : start + ROW_CHUNK] for start in range(0, rows.shape[0], ROW_CHUNK)]
    return np.concatenate(ordered_map(func, chunks, threads))
