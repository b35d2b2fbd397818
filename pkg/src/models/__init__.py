"""Базовые классификаторы и движок полносвязных сетей."""

from src.models.classifiers import (
    AnalyticClassifier,
    Classifier,
    ClassifierKind,
    CorruptedAnalyticClassifier,
    SpecialistAnalyticClassifier,
    TrainedMlpClassifier,
    classifier_from_dict,
    load_classifier,
    save_classifier,
)
from src.models.losses import LOSSES, LossKind, absolute_error, softmax_cross_entropy, squared_error
from src.models.mlp import MlpGradients, MlpModel, init_mlp, mlp_backward, mlp_forward
from src.models.optim import OptimizerState, adam_step
from src.models.training import EpochRecord, FitResult, TrainingConfig, fit_mlp, train_classifier

__all__ = [
    "LOSSES",
    "AnalyticClassifier",
    "Classifier",
    "ClassifierKind",
    "CorruptedAnalyticClassifier",
    "EpochRecord",
    "FitResult",
    "LossKind",
    "MlpGradients",
    "MlpModel",
    "OptimizerState",
    "SpecialistAnalyticClassifier",
    "TrainedMlpClassifier",
    "TrainingConfig",
    "absolute_error",
    "adam_step",
    "classifier_from_dict",
    "fit_mlp",
    "init_mlp",
    "load_classifier",
    "mlp_backward",
    "mlp_forward",
    "save_classifier",
    "softmax_cross_entropy",
    "squared_error",
    "train_classifier",
]
