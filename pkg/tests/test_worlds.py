import json

import numpy as np
import pytest

from src.core.rng import RngSeed
from src.shared.errors import ConfigurationError, InvalidDistributionError, OutOfSupportError
from src.worlds.discrete import DiscreteWorld
from src.worlds.gaussian import GaussianMixtureWorld
from src.worlds.generators import make_clustered_world
from src.worlds.noisy import NoisyLabelWorld
from src.worlds.specs import load_world_file, world_from_dict
from src.worlds.transforms import (
    ScenarioTransform,
    apply_label_noise,
    apply_long_tail,
    label_noise_channel,
    long_tail_weights,
    make_specialist_world,
)
from tests.conftest import random_discrete_world


def test_discrete_world_lookup(rng):
    world = random_discrete_world(rng, 5)
    assert world.dim == 1
    np.testing.assert_array_equal(world.support_indices(np.array([[3.0], [0.0]])), [3, 0])
    np.testing.assert_allclose(world.posterior_many(np.array([[4.0]]))[0], world.posteriors[4])
    with pytest.raises(OutOfSupportError):
        world.posterior_many(np.array([[0.5]]))


def test_discrete_marginals_must_sum_to_one():
    with pytest.raises(InvalidDistributionError):
        DiscreteWorld([0.0, 1.0], [0.5, 0.4], [[0.5, 0.5], [0.5, 0.5]])
    with pytest.raises(ConfigurationError):
        DiscreteWorld([0.0, 0.0], [0.5, 0.5], [[0.5, 0.5], [0.5, 0.5]])


def test_discrete_sampling_follows_marginals(rng):
    world = random_discrete_world(rng, 4)
    ds = world.sample(40000, RngSeed(1))
    counts = np.bincount(world.support_indices(ds.features), minlength=4) / len(ds)
    np.testing.assert_allclose(counts, world.marginals, atol=0.01)
    np.testing.assert_allclose(ds.class_frequencies(), world.class_priors(), atol=0.01)


def test_sampling_is_deterministic(clustered_world):
    a = clustered_world.sample(500, RngSeed(9))
    b = clustered_world.sample(500, RngSeed(9))
    np.testing.assert_array_equal(a.features, b.features)
    np.testing.assert_array_equal(a.labels, b.labels)


def test_gaussian_posterior_matches_bayes_rule():
    world = GaussianMixtureWorld([[0.0], [2.0]], [1.0, 1.0], [0.3, 0.7])
    x = np.array([[0.5]])
    density = np.exp(-0.5 * (x[0, 0] - np.array([0.0, 2.0])) ** 2) * np.array([0.3, 0.7])
    np.testing.assert_allclose(world.posterior_many(x)[0], density / density.sum())


def test_gaussian_marginal_keeps_selected_dims(clustered_world):
    view = clustered_world.marginal([0, 1])
    assert view.dim == 2
    np.testing.assert_array_equal(view.means, clustered_world.means[:, :2])
    with pytest.raises(ConfigurationError):
        clustered_world.marginal([0, 99])


def test_clustered_world_layout():
    world = make_clustered_world(num_classes=8, num_clusters=4, view_dims=2, extra_dims=3, seed=1)
    assert (world.num_classes, world.dim) == (8, 5)
    np.testing.assert_allclose(world.priors, np.full(8, 1 / 8))
    # классы k и k + M лежат в одном кластере
    assert np.linalg.norm(world.means[0, :2] - world.means[4, :2]) < np.linalg.norm(
        world.means[0, :2] - world.means[2, :2]
    )
    with pytest.raises(ConfigurationError):
        make_clustered_world(num_classes=3, num_clusters=4)


def test_label_noise_channel_rows():
    transform = ScenarioTransform.label_noise([1], flip_probability=0.5)
    channel = label_noise_channel(transform, 4)
    np.testing.assert_allclose(channel.sum(axis=1), 1.0)
    np.testing.assert_allclose(channel[1], [0.125, 0.625, 0.125, 0.125])
    np.testing.assert_array_equal(channel[0], [1, 0, 0, 0])


def test_apply_label_noise_touches_only_noisy_classes(clustered_world):
    ds = clustered_world.sample(3000, RngSeed(2))
    noisy = apply_label_noise(ds, ScenarioTransform.label_noise([0, 3]), RngSeed(4))
    clean = ~np.isin(ds.labels, [0, 3])
    np.testing.assert_array_equal(noisy.labels[clean], ds.labels[clean])
    flipped = np.mean(noisy.labels[~clean] != ds.labels[~clean])
    assert flipped == pytest.approx(5 / 6, abs=0.04)


def test_noisy_world_posterior_is_pushed_through_channel(clustered_world):
    transform = ScenarioTransform.label_noise([0, 1, 2])
    world = NoisyLabelWorld(clustered_world, transform)
    x = clustered_world.sample(20, RngSeed(0)).features
    expected = clustered_world.posterior_many(x) @ label_noise_channel(transform, 6)
    np.testing.assert_allclose(world.posterior_many(x), expected)
    ds = world.sample(20000, RngSeed(5))
    np.testing.assert_allclose(ds.class_frequencies(), world.class_priors(), atol=0.015)


def test_specialist_split_predicate(clustered_world):
    world, predicate = make_specialist_world(clustered_world, ScenarioTransform.specialist_split([0, 2]))
    assert world is clustered_world
    np.testing.assert_array_equal(predicate(np.array([0, 1, 2, 3])), [True, False, True, False])
    with pytest.raises(ConfigurationError):
        make_specialist_world(clustered_world, ScenarioTransform.specialist_split(list(range(6))))


def test_long_tail_reweights_priors(clustered_world):
    transform = ScenarioTransform.long_tail(2)
    np.testing.assert_allclose(long_tail_weights(transform, 6), [500, 500, 50, 50, 50, 50])
    skewed = apply_long_tail(clustered_world, transform)
    np.testing.assert_allclose(skewed.priors, np.array([10, 10, 1, 1, 1, 1]) / 24)
    with pytest.raises(ConfigurationError):
        long_tail_weights(ScenarioTransform.long_tail(6), 6)


def test_discrete_reweighting_matches_joint(rng):
    world = random_discrete_world(rng, 3, num_classes=2)
    weights = np.array([2.0, 1.0])
    skewed = world.reweighted(weights)
    joint = world.marginals[:, None] * world.posteriors * weights
    np.testing.assert_allclose(skewed.marginals[:, None] * skewed.posteriors, joint / joint.sum())


def test_transform_from_dict_rejects_foreign_fields():
    assert ScenarioTransform.from_dict({"kind": "long-tail-skew", "head_count": 3}).head_count == 3
    with pytest.raises(ConfigurationError):
        ScenarioTransform.from_dict({"kind": "label-noise", "good_classes": [1]})
    with pytest.raises(ConfigurationError):
        ScenarioTransform.from_dict({"kind": "mystery"})


def test_world_from_dict_variants(rng):
    discrete = random_discrete_world(rng, 3)
    assert isinstance(world_from_dict(discrete.to_dict()), DiscreteWorld)
    generated = world_from_dict({"kind": "gaussian-mixture", "generator": {"num_classes": 4, "num_clusters": 2}})
    assert generated.num_classes == 4
    noisy = world_from_dict(
        {"kind": "label-noise", "base": generated.to_dict(), "transform": {"kind": "label-noise", "noisy_classes": [0]}}
    )
    assert isinstance(noisy, NoisyLabelWorld)
    with pytest.raises(ConfigurationError):
        world_from_dict({"kind": "gaussian-mixture", "means": [[0.0], [1.0]]})
    with pytest.raises(ConfigurationError):
        world_from_dict({"kind": "discrete", "support": [], "extra": 1})


def test_load_world_file_reads_transforms(tmp_path, clustered_world):
    data = clustered_world.to_dict() | {"transforms": [{"kind": "specialist-split", "good_classes": [1]}]}
    path = tmp_path / "world.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    world, transforms = load_world_file(path)
    np.testing.assert_allclose(world.means, clustered_world.means)
    assert transforms == [ScenarioTransform.specialist_split([1])]


def test_skewed_class_frequency_is_concentrated():
    world = DiscreteWorld([0.0, 1.0], [0.5, 0.5], [[0.8, 0.2], [0.8, 0.2]])
    ds = world.sample(10000, RngSeed(3))
    assert ds.class_frequencies()[0] == pytest.approx(0.8, abs=0.02)


def test_full_label_noise_gives_uniform_labels():
    world = GaussianMixtureWorld(np.arange(10.0)[:, None], np.ones(10), np.full(10, 0.1))
    ds = world.sample(100000, RngSeed(6))
    noisy = apply_label_noise(ds, ScenarioTransform.label_noise(list(range(10))), RngSeed(7))
    np.testing.assert_allclose(noisy.class_frequencies(), np.full(10, 0.1), atol=0.01)
