"""Базовые типы: распределения, наборы данных, случайность."""

from src.core.dataset import Dataset, LabeledExample, load_dataset_csv, save_dataset_csv
from src.core.probability import (
    ProbVector,
    argmax_label,
    entropy,
    max_probability,
    normalize,
    normalize_rows,
    temperature_transform,
    validate_simplex,
)
from src.core.rng import RngSeed, as_seed

__all__ = [
    "Dataset",
    "LabeledExample",
    "ProbVector",
    "RngSeed",
    "argmax_label",
    "as_seed",
    "entropy",
    "load_dataset_csv",
    "max_probability",
    "normalize",
    "normalize_rows",
    "save_dataset_csv",
    "temperature_transform",
    "validate_simplex",
]
