import json

import pytest

from src.deferral.rules import RuleKind
from src.evaluation.curves import ThresholdMode
from src.models.classifiers import ClassifierKind
from src.posthoc.targets import TargetKind
from src.services.scenario import (
    ScenarioConfig,
    bundled_scenarios,
    load_scenario,
    resolve_config_path,
)
from src.shared.errors import ArtifactIOError, ConfigurationError
from src.worlds.noisy import NoisyLabelWorld
from src.worlds.transforms import TransformKind
from tests.conftest import tiny_scenario


def test_tiny_scenario_parses():
    config = ScenarioConfig.from_dict(tiny_scenario())
    assert config.scenario == "tiny"
    assert config.num_models == 2
    assert config.seeds == (5,)
    assert [m.kind for m in config.models] == [ClassifierKind.ANALYTIC, ClassifierKind.ANALYTIC]
    assert [r.label for r in config.rules] == ["confidence", "random", "bayes", "posthoc-diff-01"]
    assert config.evaluation.inference_costs == (1.0, 4.0)
    assert config.posthoc.training.hidden_sizes == (8,)


def test_bare_posthoc_rule_expands_to_all_targets():
    data = tiny_scenario(rules=[{"kind": "posthoc"}], posthoc={"targets": ["diff-prob", "maxprob"]})
    config = ScenarioConfig.from_dict(data)
    assert [r.target for r in config.rules] == [TargetKind.DIFF_PROB, TargetKind.MAXPROB]
    assert all(r.kind is RuleKind.POSTHOC for r in config.rules)


@pytest.mark.parametrize(
    ("overrides", "fragment"),
    [
        ({"colour": "red"}, "$.colour"),
        ({"models": [{"name": "only", "kind": "analytic"}]}, "models"),
        ({"rules": [{"kind": "confidence", "target": "diff-01"}]}, "rules[0].target"),
        ({"rules": [{"kind": "psychic"}]}, "rules[0].kind"),
        ({"rules": [{"kind": "confidence"}, {"kind": "confidence"}]}, "rules"),
        ({"evaluation": {"rates": [0.5, 0.1]}}, "evaluation.rates"),
        ({"evaluation": {"num_test": 0}}, "evaluation.num_test"),
        ({"evaluation": {"inference_costs": [1, 2, 3]}}, "evaluation.inference_costs"),
        ({"evaluation": {"threshold_mode": "fixed"}}, "evaluation.thresholds"),
        ({"posthoc": {"split_fraction": 1.5}}, "posthoc.split_fraction"),
        ({"posthoc": {"momentum": 0.9}}, "posthoc.momentum"),
        ({"models": [{"name": "a", "kind": "analytic"}, {"name": "a", "kind": "analytic"}]}, "models"),
        ({"models": [{"name": "a", "kind": "corrupted-analytic"}, {"name": "b", "kind": "analytic"}]}, "temperature"),
    ],
)
def test_schema_errors_name_the_field(overrides, fragment):
    with pytest.raises(ConfigurationError, match=fragment.replace("$", r"\$").replace("[", r"\[")):
        ScenarioConfig.from_dict(tiny_scenario(**overrides))


def test_specialist_model_needs_split_transform():
    models = [
        {"name": "spec", "kind": "specialist-analytic"},
        {"name": "large", "kind": "analytic"},
    ]
    with pytest.raises(ConfigurationError, match="specialist-split"):
        ScenarioConfig.from_dict(tiny_scenario(models=models))
    config = ScenarioConfig.from_dict(
        tiny_scenario(models=models, transforms=[{"kind": "specialist-split", "good_classes": [0, 1, 2]}])
    )
    setup = config.world.build()
    assert setup.predicate is not None
    assert setup.train_world is setup.test_world


def test_long_tail_changes_only_train_world():
    config = ScenarioConfig.from_dict(tiny_scenario(transforms=[{"kind": "long-tail-skew", "head_count": 2}]))
    setup = config.world.build()
    assert setup.train_world.class_priors()[0] > setup.test_world.class_priors()[0]


def test_label_noise_changes_only_train_world():
    setup = load_scenario("label_noise_25").world.build()
    assert isinstance(setup.train_world, NoisyLabelWorld)
    assert not isinstance(setup.test_world, NoisyLabelWorld)


def test_fixed_thresholds_need_one_value_per_stage():
    evaluation = {"threshold_mode": "fixed", "thresholds": [[0.5, 0.6]]}
    with pytest.raises(ConfigurationError, match="evaluation.thresholds"):
        ScenarioConfig.from_dict(tiny_scenario(evaluation=evaluation))
    config = ScenarioConfig.from_dict(
        tiny_scenario(evaluation={"threshold_mode": "fixed", "thresholds": [0.5, 0.9]})
    )
    assert config.evaluation.threshold_mode is ThresholdMode.FIXED
    assert config.evaluation.thresholds == ((0.5,), (0.9,))


def test_to_dict_round_trip():
    config = ScenarioConfig.from_dict(tiny_scenario(evaluation={"seeds": [1, 2], "num_test": 300}))
    again = ScenarioConfig.from_dict(json.loads(json.dumps(config.to_dict())))
    assert again.to_dict() == config.to_dict()
    assert again.seeds == (1, 2)


def test_with_overrides_replaces_seeds():
    config = ScenarioConfig.from_dict(tiny_scenario(evaluation={"seeds": [1, 2]}))
    single = config.with_overrides(output_dir="elsewhere", seed=9)
    assert single.seeds == (9,)
    assert single.output_dir == "elsewhere"
    assert config.seeds == (1, 2)


def test_load_scenario_accepts_manifest(write_config):
    config = ScenarioConfig.from_dict(tiny_scenario())
    manifest = {"manifest_version": 1, "scenario": "tiny", "config": config.to_dict()}
    loaded = load_scenario(write_config(manifest, "manifest.json"))
    assert loaded.to_dict() == config.to_dict()


def test_load_scenario_file_errors(write_config, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_scenario(broken)
    with pytest.raises(ConfigurationError):
        load_scenario(write_config([1, 2]))
    with pytest.raises(ConfigurationError):
        resolve_config_path(tmp_path / "missing.json")


def test_world_file_reference(tmp_path):
    world = {
        "kind": "gaussian-mixture",
        "generator": {"num_classes": 6, "num_clusters": 2},
        "transforms": [{"kind": "label-noise", "noisy_classes": [0]}],
    }
    (tmp_path / "world.json").write_text(json.dumps(world), encoding="utf-8")
    config = ScenarioConfig.from_dict(tiny_scenario(world="world.json"), tmp_path)
    assert [t.kind for t in config.world.transforms] == [TransformKind.LABEL_NOISE]
    with pytest.raises(ArtifactIOError):
        ScenarioConfig.from_dict(tiny_scenario(world="absent.json"), tmp_path)


def test_bundled_scenarios_load():
    names = bundled_scenarios()
    assert {"specialist", "generalist", "label_noise_25", "long_tail_50", "three_model_noise"} <= set(names)
    for name in names:
        config = load_scenario(name)
        assert config.scenario
        assert config.num_models >= 2
        assert config.description


def test_description_is_kept_and_checked():
    config = ScenarioConfig.from_dict(tiny_scenario(description="два класса с шумом"))
    assert config.to_dict()["description"] == "два класса с шумом"
    assert "2 из 20" in load_scenario("label_noise_10").description
    with pytest.raises(ConfigurationError, match="description"):
        ScenarioConfig.from_dict(tiny_scenario(description=3))
