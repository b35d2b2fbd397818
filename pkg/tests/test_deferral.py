import numpy as np
import pytest

from src.core.rng import RngSeed
from src.deferral.cascade import CascadeConfig, CascadeMode, run_cascade, run_cascade_many
from src.deferral.rules import DeferralRule, InputName, RuleKind, StageInputs
from src.deferral.scores import (
    score_bayes,
    score_confidence,
    score_entropy,
    score_onehot_oracle,
    score_prob_oracle,
    score_relative_confidence,
)
from src.deferral.selector import optimal_selector, optimal_selector_many, selector_error_probs
from src.models.classifiers import AnalyticClassifier, CorruptedAnalyticClassifier
from src.models.mlp import init_mlp
from src.posthoc.features import feature_dim
from src.posthoc.targets import TargetKind
from src.posthoc.trainer import PosthocModel
from src.shared.errors import ConfigurationError, ContractViolationError, ShapeError


def _posthoc_model(num_classes, kind=TargetKind.DIFF_01):
    return PosthocModel(init_mlp((feature_dim(num_classes), 4, 1), RngSeed(0)), kind, num_classes)


def test_scores_on_single_vectors():
    p1 = np.array([0.6, 0.3, 0.1])
    p2 = np.array([0.1, 0.8, 0.1])
    eta = np.array([0.2, 0.7, 0.1])
    assert score_confidence(p1) == pytest.approx(-0.6)
    assert score_entropy(np.array([0.5, 0.5])) == pytest.approx(np.log(2))
    assert score_bayes(eta, 0, 1) == pytest.approx(0.5)
    assert score_onehot_oracle(1, 0, 1) == 1.0
    assert score_onehot_oracle(2, 0, 1) == 0.0
    assert score_prob_oracle(p1, p2, 1) == pytest.approx(0.5)
    assert score_relative_confidence(p1, p2) == pytest.approx(0.2)


def test_restricted_inputs_reject_undeclared_reads():
    inputs = StageInputs(p1=np.eye(2), p2=np.eye(2))
    view = inputs.restrict(frozenset({InputName.P1}))
    np.testing.assert_array_equal(view.p1, np.eye(2))
    with pytest.raises(ContractViolationError):
        _ = view.p2
    with pytest.raises(ConfigurationError):
        StageInputs(q=np.eye(2))


def test_deployable_rules_never_evaluate_next_model():
    calls = []

    def p2():
        calls.append("p2")
        return np.eye(3)

    p1 = np.array([[0.9, 0.05, 0.05], [0.4, 0.3, 0.3], [0.34, 0.33, 0.33]])
    for rule in (
        DeferralRule(RuleKind.CONFIDENCE),
        DeferralRule(RuleKind.ENTROPY),
        DeferralRule(RuleKind.RANDOM),
        DeferralRule(RuleKind.POSTHOC, posthoc_model=_posthoc_model(3)),
    ):
        inputs = StageInputs(p1=p1, p2=p2, indices=np.arange(3))
        rule.decide(inputs, 0.5)
        assert InputName.P2 not in inputs.reads
    assert calls == []


def test_rule_reads_match_declared_inputs():
    p = np.array([[0.7, 0.3], [0.4, 0.6]])
    for kind in RuleKind:
        if kind is RuleKind.POSTHOC:
            continue
        rule = DeferralRule(kind)
        inputs = StageInputs(p1=p, p2=p[::-1], labels=np.array([0, 1]), eta=p, indices=np.arange(2))
        rule.score(inputs)
        assert inputs.reads <= rule.required_inputs


def test_confidence_threshold_is_in_user_units():
    rule = DeferralRule(RuleKind.CONFIDENCE)
    inputs = StageInputs(p1=np.array([[0.9, 0.1], [0.55, 0.45], [0.7, 0.3]]))
    np.testing.assert_array_equal(rule.decide(inputs, 0.7), [False, True, False])
    assert rule.user_threshold(rule.score_threshold(0.7)) == 0.7


def test_random_rule_defers_requested_share():
    rule = DeferralRule(RuleKind.RANDOM, seed=RngSeed(12))
    inputs = StageInputs(indices=np.arange(20000))
    assert rule.decide(inputs, 0.3).mean() == pytest.approx(0.3, abs=0.015)
    again = rule.decide(StageInputs(indices=np.arange(20000)), 0.3)
    np.testing.assert_array_equal(again, rule.decide(inputs, 0.3))


def test_posthoc_rule_validation():
    with pytest.raises(ConfigurationError):
        DeferralRule(RuleKind.POSTHOC)
    with pytest.raises(ConfigurationError):
        DeferralRule(RuleKind.POSTHOC, TargetKind.MAXPROB, _posthoc_model(3, TargetKind.DIFF_01))
    rule = DeferralRule(RuleKind.POSTHOC, posthoc_model=_posthoc_model(3, TargetKind.DIFF_PROB))
    assert rule.name == "posthoc-diff-prob"
    with pytest.raises(ShapeError):
        rule.score(StageInputs(p1=np.full((2, 4), 0.25)))


def test_maxprob_posthoc_subtracts_confidence():
    model = _posthoc_model(3, TargetKind.MAXPROB)
    p1 = np.array([[0.5, 0.3, 0.2], [0.1, 0.1, 0.8]])
    rule = DeferralRule(RuleKind.POSTHOC, posthoc_model=model)
    np.testing.assert_allclose(rule.score(StageInputs(p1=p1)), model.predict_many(p1) - p1.max(axis=1))


def test_deployment_mode_rejects_oracles(clustered_world):
    models = (AnalyticClassifier(clustered_world, (0, 1)), AnalyticClassifier(clustered_world))
    for kind in (RuleKind.ORACLE_ONEHOT, RuleKind.ORACLE_PROB, RuleKind.ORACLE_RELATIVE, RuleKind.BAYES):
        with pytest.raises(ConfigurationError):
            CascadeConfig(models, (DeferralRule(kind),), (0.0,))
        CascadeConfig(models, (DeferralRule(kind),), (0.0,), mode=CascadeMode.ANALYSIS)


def test_cascade_config_checks_lengths_and_costs(clustered_world):
    models = (AnalyticClassifier(clustered_world, (0, 1)), AnalyticClassifier(clustered_world))
    rule = DeferralRule(RuleKind.CONFIDENCE)
    with pytest.raises(ConfigurationError):
        CascadeConfig(models, (rule, rule), (0.5, 0.5))
    with pytest.raises(ConfigurationError):
        CascadeConfig(models, (rule,), (0.5,), costs=(0.1, 0.2))
    with pytest.raises(ConfigurationError):
        CascadeConfig(models[:1], (), ())


def test_two_model_cascade_invokes_second_model_only_when_deferring(clustered_world):
    small = AnalyticClassifier(clustered_world, (0, 1))
    large = AnalyticClassifier(clustered_world)
    ds = clustered_world.sample(500, RngSeed(1))
    config = CascadeConfig((small, large), (DeferralRule(RuleKind.CONFIDENCE),), (0.8,))
    result = run_cascade_many(config, ds.features)

    p1 = small.predict_proba_many(ds.features)
    deferred = p1.max(axis=1) < 0.8
    expected = np.where(deferred, large.predict_many(ds.features), p1.argmax(axis=1))
    np.testing.assert_array_equal(result.predictions, expected)
    np.testing.assert_array_equal(result.exit_indices, np.where(deferred, 2, 1))
    np.testing.assert_array_equal(result.invoked[:, 1], deferred)
    assert result.invoked[:, 0].all()
    np.testing.assert_allclose(result.invocation_rates(), [1.0, deferred.mean()])

    single = run_cascade(config, ds.features[3])
    assert (single.prediction, single.exit_index) == (result[3].prediction, result[3].exit_index)


def test_three_model_cascade_routes_through_stages(clustered_world):
    models = (
        AnalyticClassifier(clustered_world, (0,)),
        AnalyticClassifier(clustered_world, (0, 1)),
        AnalyticClassifier(clustered_world),
    )
    rules = (DeferralRule(RuleKind.CONFIDENCE), DeferralRule(RuleKind.CONFIDENCE))
    ds = clustered_world.sample(800, RngSeed(2))
    result = run_cascade_many(CascadeConfig(models, rules, (0.6, 0.9)), ds.features)

    conf1 = models[0].predict_proba_many(ds.features).max(axis=1)
    conf2 = models[1].predict_proba_many(ds.features).max(axis=1)
    exits = np.where(conf1 >= 0.6, 1, np.where(conf2 >= 0.9, 2, 3))
    np.testing.assert_array_equal(result.exit_indices, exits)
    np.testing.assert_array_equal(result.invoked, np.stack([np.ones(800, bool), exits > 1, exits > 2], axis=1))
    for k in range(3):
        stage = exits == k + 1
        np.testing.assert_array_equal(result.predictions[stage], models[k].predict_many(ds.features)[stage])


def test_analysis_mode_feeds_labels_and_posterior(clustered_world):
    small = CorruptedAnalyticClassifier(clustered_world, 0.5, (0, 1))
    large = AnalyticClassifier(clustered_world)
    ds = clustered_world.sample(300, RngSeed(3))
    config = CascadeConfig((small, large), (DeferralRule(RuleKind.ORACLE_ONEHOT),), (0.0,), mode="analysis")
    result = run_cascade_many(config, ds.features, ds.labels, clustered_world)
    h1, h2 = small.predict_many(ds.features), large.predict_many(ds.features)
    deferred = (ds.labels == h2) & (ds.labels != h1)
    np.testing.assert_array_equal(result.exit_indices == 2, deferred)
    with pytest.raises(ConfigurationError):
        config = CascadeConfig((small, large), (DeferralRule(RuleKind.BAYES),), (0.0,), mode="analysis")
        run_cascade_many(config, ds.features)


def test_two_model_selector_is_bayes_rule():
    gen = RngSeed(21).generator()
    for _ in range(1000):
        eta = gen.dirichlet(np.ones(4))
        h1, h2 = gen.integers(0, 4, size=2)
        cost = float(gen.uniform(0, 0.5))
        errors = [1.0 - eta[h1], 1.0 - eta[h2]]
        defer = score_bayes(eta, h1, h2) > cost
        assert optimal_selector(errors, [0.0, cost]) == int(defer)


def test_selector_ties_and_validation():
    assert optimal_selector([0.3, 0.2], [0.0, 0.1]) == 0
    errors = np.array([[0.5, 0.1, 0.0], [0.0, 0.0, 0.0]])
    np.testing.assert_array_equal(optimal_selector_many(errors, [0, 0.2, 0.3]), [1, 0])
    with pytest.raises(ConfigurationError):
        optimal_selector([0.1, 0.2], [0.2, 0.1])
    with pytest.raises(ShapeError):
        optimal_selector([0.1], [0.0, 0.1])
    eta = np.array([[0.2, 0.8], [0.6, 0.4]])
    np.testing.assert_allclose(selector_error_probs(eta, np.array([[0, 1], [0, 0]])), [[0.8, 0.2], [0.4, 0.4]])
