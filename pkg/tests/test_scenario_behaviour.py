"""Качественные проверки встроенных сценариев на полном размере выборок."""

import json

import numpy as np
import pytest

from src.evaluation.curves import accuracy_at_cost
from src.services.runner import ScenarioRunner
from src.services.scenario import ScenarioConfig, load_scenario, resolve_config_path

pytestmark = pytest.mark.slow

BAND = np.round(np.arange(0.05, 0.401, 0.05), 10)
NOISE_BAND = np.round(np.arange(0.1, 0.501, 0.05), 10)
DIFF_RULES = ("posthoc-diff-01", "posthoc-diff-prob")


def _curves(name, config=None):
    config = config or load_scenario(name)
    artifacts = ScenarioRunner(config).run_seed(config.seeds[0])
    return {curve.rule: curve for curve in artifacts.curves}, config.evaluation.num_test


def _gaps(curves, rule, rates):
    return np.array([curves[rule].accuracy_at_rate(r) - curves["confidence"].accuracy_at_rate(r) for r in rates])


def test_specialist_beats_confidence():
    curves, _ = _curves("specialist")
    assert _gaps(curves, "oracle-relative", BAND).max() >= 0.03
    assert max(_gaps(curves, rule, BAND).max() for rule in DIFF_RULES) >= 0.03


def test_generalist_deployable_rules_agree():
    curves, _ = _curves("generalist")
    rates = curves["confidence"].rates
    for rule in ("entropy", *DIFF_RULES):
        assert np.abs(_gaps(curves, rule, rates)).max() <= 0.015, rule


def test_label_noise_posthoc_beats_confidence():
    curves, n = _curves("label_noise_25")
    posthoc = [rule for rule in curves if rule.startswith("posthoc-")]
    best = max(posthoc, key=lambda rule: _gaps(curves, rule, NOISE_BAND).max())
    gaps = _gaps(curves, best, NOISE_BAND)
    conf = np.array([curves["confidence"].accuracy_at_rate(r) for r in NOISE_BAND])
    stderr = np.sqrt(conf * (1 - conf) / n)
    assert gaps.max() >= 0.02
    assert np.all(gaps >= -3 * stderr)


def test_long_tail_diff_01_beats_confidence():
    curves, _ = _curves("long_tail_50")
    rates = curves["confidence"].rates
    assert _gaps(curves, "posthoc-diff-01", rates).max() >= 0.02


def test_long_tail_without_skew_curves_agree():
    data = json.loads(resolve_config_path("long_tail_50").read_text(encoding="utf-8"))
    skew = data["transforms"][0]
    skew["head_weight"] = skew["tail_weight"]
    curves, _ = _curves("long_tail_50", ScenarioConfig.from_dict(data))
    rates = curves["confidence"].rates
    for rule in ("entropy", *DIFF_RULES):
        assert np.abs(_gaps(curves, rule, rates)).max() <= 0.015, rule


def test_three_model_posthoc_dominates_at_matched_cost():
    curves, _ = _curves("three_model_noise")
    conf = curves["confidence"]
    wins = []
    for rule in ("posthoc-diff-01", "posthoc-diff-prob"):
        curve = curves[rule]
        lo = max(conf.relative_costs.min(), curve.relative_costs.min())
        hi = min(conf.relative_costs.max(), curve.relative_costs.max())
        grid = np.linspace(lo, hi, 7)[1:-1]
        wins.append(int(np.sum(accuracy_at_cost(curve, grid) > accuracy_at_cost(conf, grid))))
    assert max(wins) >= 3
