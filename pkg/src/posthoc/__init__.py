"""Пост-хок правила отложения: признаки, цели, обучение, хранение."""

from src.posthoc.features import extract_features, feature_dim
from src.posthoc.splits import DEFAULT_HELDOUT_FRACTION, validation_split
from src.posthoc.storage import load_model, posthoc_from_dict, posthoc_to_dict, save_model
from src.posthoc.targets import LOSS_FOR_TARGET, PosthocPairs, PosthocTarget, TargetKind, compute_targets, make_targets
from src.posthoc.trainer import PosthocModel, train_posthoc

__all__ = [
    "DEFAULT_HELDOUT_FRACTION",
    "LOSS_FOR_TARGET",
    "PosthocModel",
    "PosthocPairs",
    "PosthocTarget",
    "TargetKind",
    "compute_targets",
    "extract_features",
    "feature_dim",
    "load_model",
    "make_targets",
    "posthoc_from_dict",
    "posthoc_to_dict",
    "save_model",
    "train_posthoc",
    "validation_split",
]
