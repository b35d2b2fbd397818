"""Синтетические миры с известным апостериорным и преобразования сценариев."""

from src.worlds.base import SyntheticWorld, sample_labels
from src.worlds.discrete import DiscreteWorld
from src.worlds.gaussian import GaussianMixtureWorld
from src.worlds.generators import make_clustered_world
from src.worlds.noisy import NoisyLabelWorld
from src.worlds.specs import load_world_file, transforms_from_list, world_from_dict
from src.worlds.transforms import (
    ScenarioTransform,
    SubgroupPredicate,
    TransformKind,
    apply_label_noise,
    apply_long_tail,
    label_noise_channel,
    long_tail_weights,
    make_specialist_world,
)

__all__ = [
    "DiscreteWorld",
    "GaussianMixtureWorld",
    "NoisyLabelWorld",
    "ScenarioTransform",
    "SubgroupPredicate",
    "SyntheticWorld",
    "TransformKind",
    "apply_label_noise",
    "apply_long_tail",
    "label_noise_channel",
    "load_world_file",
    "long_tail_weights",
    "make_clustered_world",
    "make_specialist_world",
    "sample_labels",
    "transforms_from_list",
    "world_from_dict",
]
