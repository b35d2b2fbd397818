"""Выполнение сценария: мир → данные → модели → пост-хок правила → кривые и артефакты."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from src.config import logger, settings
from src.core.dataset import Dataset
from src.core.rng import RngSeed
from src.deferral.rules import DeferralRule, RuleKind
from src.evaluation.calibration import CalibrationReport, calibration_report
from src.evaluation.curves import DeferralCurve, cascade_curve, deferral_curve
from src.evaluation.risk import TwoModelOutputs, rule_decisions, two_model_outputs
from src.models.classifiers import Classifier, TrainedMlpClassifier
from src.posthoc.splits import validation_split
from src.posthoc.storage import load_model, posthoc_to_dict
from src.posthoc.targets import make_targets
from src.posthoc.trainer import PosthocModel, train_posthoc
from src.services.plotting import render_curves_svg
from src.services.scenario import (
    MIN_MODELS,
    RuleSpec,
    ScenarioConfig,
    TrainDataProvider,
    WorldSetup,
    load_scenario,
)
from src.shared.decorators import handle_run_errors, log_stage_calls
from src.shared.errors import ShapeError
from src.shared.formatters import Formatters
from src.shared.parallel import ordered_map
from src.shared.responses import RunResponse
from src.storage.artifacts import ArtifactStore, config_hash
from src.storage.columns import CsvHeaders
from src.worlds.base import SyntheticWorld

POSTHOC_TRAIN_SPLIT = "posthoc-train"


@dataclass
class StagedRule:
    """Правило сценария, разложенное по стадиям каскада."""

    spec: RuleSpec
    stages: list[DeferralRule]

    @property
    def label(self) -> str:  # noqa: D102
        return self.spec.label


@dataclass
class SeedArtifacts:
    """Все результаты одного зерна до записи на диск."""

    seed: int
    curves: list[DeferralCurve] = field(default_factory=list)
    train_curves: list[DeferralCurve] = field(default_factory=list)
    calibration: CalibrationReport | None = None
    history_rows: list[dict[str, Any]] = field(default_factory=list)
    models: dict[str, dict[str, Any]] = field(default_factory=dict)
    operating_points: list[dict[str, Any]] = field(default_factory=list)


@dataclass
class PosthocData:
    """Выборка для пост-хок моделей: обучающая и отложенная части."""

    world: SyntheticWorld
    fit: Dataset
    heldout: Dataset


class ScenarioRunner:
    """Класс для выполнения сценария по всем зернам."""

    def __init__(self, config: ScenarioConfig) -> None:  # noqa: D107
        self.config = config

    @property
    def output_dir(self) -> Path:
        """Каталог запуска: из конфигурации или {CASCADELAB_OUTPUT_ROOT}/{scenario}."""
        if self.config.output_dir:
            return Path(self.config.output_dir)
        return Path(settings.output_root) / self.config.scenario

    def _stage_label(self, label: str, stage: int) -> str:
        return label if self.config.num_models == MIN_MODELS else f"{label}-stage{stage + 1}"

    @log_stage_calls
    def build_models(self, setup: WorldSetup, seed: RngSeed) -> list[Classifier]:
        """Базовые модели в порядке каскада."""
        train_data = TrainDataProvider(setup, self.config.evaluation.num_train, seed)
        return [spec.build(setup, train_data, seed.child("model", i)) for i, spec in enumerate(self.config.models)]

    def _posthoc_data(self, setup: WorldSetup, seed: RngSeed) -> PosthocData:
        block = self.config.posthoc
        world = setup.world_for(block.validation_source)
        pool = world.sample(block.num_samples or self.config.evaluation.num_train, seed.child("posthoc"))
        fit, heldout = validation_split(pool, block.split_fraction, seed.child("split"))
        logger.info(f"Пост-хок выборка ({block.validation_source}): {len(fit)} обучение, {len(heldout)} отложено")
        return PosthocData(world, fit, heldout)

    @log_stage_calls
    def build_rules(
        self,
        models: list[Classifier],
        posthoc_data: PosthocData | None,
        seed: RngSeed,
        artifacts: SeedArtifacts,
    ) -> list[StagedRule]:
        """Правила по стадиям; пост-хок модели обучаются или читаются из файла."""
        staged = []
        for i, spec in enumerate(self.config.rules):
            stages = []
            for k in range(self.config.num_models - 1):
                posthoc_model = None
                if spec.kind is RuleKind.POSTHOC:
                    posthoc_model = self._posthoc_model(spec, models, k, posthoc_data, seed.child("posthoc", i, k))
                    if spec.model_path is None:
                        name = f"{self._stage_label(spec.label, k)}-seed{artifacts.seed}.json"
                        artifacts.models[name] = posthoc_to_dict(posthoc_model)
                        artifacts.history_rows.extend(
                            {
                                "rule": self._stage_label(spec.label, k),
                                "seed": artifacts.seed,
                                "epoch": record.epoch,
                                "train_loss": record.train_loss,
                                "heldout_loss": record.heldout_loss,
                            }
                            for record in posthoc_model.history
                        )
                stages.append(spec.make_rule(seed.child("random", i, k), posthoc_model))
            staged.append(StagedRule(spec, stages))
        return staged

    def _posthoc_model(
        self,
        spec: RuleSpec,
        models: list[Classifier],
        stage: int,
        posthoc_data: PosthocData | None,
        seed: RngSeed,
    ) -> PosthocModel:
        if spec.model_path is not None:
            model = load_model(spec.model_path)
            if model.num_classes != models[0].num_classes:
                msg = f"пост-хок модель {spec.model_path}: L = {model.num_classes}, у базовых {models[0].num_classes}"
                raise ShapeError(msg)
            return model
        training = self.config.posthoc.training
        pairs = make_targets(posthoc_data.fit, models[stage], models[stage + 1], spec.target)
        heldout = make_targets(posthoc_data.heldout, models[stage], models[stage + 1], spec.target)
        return train_posthoc(pairs, training, seed, heldout)

    def _curve(
        self,
        ds: Dataset,
        world: SyntheticWorld,
        models: list[Classifier],
        rule: StagedRule,
        seed: int,
        outputs: TwoModelOutputs | None = None,
    ) -> DeferralCurve:
        evaluation = self.config.evaluation
        if self.config.num_models == MIN_MODELS:
            return deferral_curve(
                ds,
                models[0],
                models[1],
                rule.stages[0],
                evaluation.rates,
                evaluation.deferral_cost,
                mode=evaluation.threshold_mode,
                thresholds=[row[0] for row in evaluation.thresholds],
                world=world,
                inference_costs=evaluation.inference_costs,
                scenario=self.config.scenario,
                seed=seed,
                outputs=outputs,
            )
        return cascade_curve(
            ds,
            models,
            rule.stages,
            evaluation.rates,
            evaluation.inference_costs,
            mode=evaluation.threshold_mode,
            thresholds=evaluation.thresholds,
            world=world,
            name=rule.label,
            scenario=self.config.scenario,
            seed=seed,
        )

    def _operating_point(
        self,
        rule: StagedRule,
        outputs: TwoModelOutputs,
        world: SyntheticWorld,
        seed: int,
    ) -> dict[str, Any]:
        threshold = rule.spec.threshold
        defer = rule_decisions(rule.stages[0], outputs, threshold, world)
        rate = float(defer.mean())
        accuracy = float(np.mean(np.where(defer, outputs.correct2, outputs.correct1)))
        return {
            "rule": rule.label,
            "seed": seed,
            "threshold": threshold,
            "deferral_rate": rate,
            "accuracy": accuracy,
            "risk": 1.0 - accuracy + self.config.evaluation.deferral_cost * rate,
        }

    @log_stage_calls
    def run_seed(self, seed: int) -> SeedArtifacts:
        """Полный конвейер для одного зерна."""
        config = self.config
        evaluation = config.evaluation
        rs = RngSeed(seed)
        artifacts = SeedArtifacts(seed)
        logger.info(f"Сценарий {config.scenario}: зерно {seed}")

        setup = config.world.build()
        models = self.build_models(setup, rs)
        for spec, model in zip(config.models, models, strict=True):
            if isinstance(model, TrainedMlpClassifier):
                artifacts.models[f"{spec.name}-seed{seed}.json"] = model.to_dict()
        test_ds = setup.test_world.sample(evaluation.num_test, rs.child("test"))

        needs_training = any(r.kind is RuleKind.POSTHOC and r.model_path is None for r in config.rules)
        posthoc_data = self._posthoc_data(setup, rs) if needs_training else None
        rules = self.build_rules(models, posthoc_data, rs, artifacts)

        outputs = None
        if config.num_models == MIN_MODELS:
            outputs = two_model_outputs(test_ds, models[0], models[1])
            artifacts.operating_points = [
                self._operating_point(rule, outputs, setup.test_world, seed)
                for rule in rules
                if rule.spec.threshold is not None
            ]
        artifacts.curves = ordered_map(
            lambda rule: self._curve(test_ds, setup.test_world, models, rule, seed, outputs),
            rules,
        )
        if posthoc_data is not None:
            trained = [r for r in rules if r.spec.kind is RuleKind.POSTHOC and r.spec.model_path is None]
            artifacts.train_curves = ordered_map(
                lambda rule: self._curve(posthoc_data.fit, posthoc_data.world, models, rule, seed),
                trained,
            )
        if evaluation.calibration:
            artifacts.calibration = calibration_report(test_ds, models[0], models[1])
        return artifacts

    @log_stage_calls
    def write(self, results: list[SeedArtifacts]) -> list[str]:
        """Записать артефакты всех зерен; при ошибке целевой каталог не меняется."""
        config = self.config
        resolved = config.to_dict()
        digest = config_hash({key: value for key, value in resolved.items() if key != "output_dir"})

        curves = pd.concat([c.to_frame() for r in results for c in r.curves], ignore_index=True)
        store = ArtifactStore(self.output_dir)
        with store.transaction():
            store.write_csv(CsvHeaders.CURVES_FILE, curves)
            train_frames = [c.to_frame() for r in results for c in r.train_curves]
            if train_frames:
                frame = pd.concat(train_frames, ignore_index=True)
                frame.insert(0, "split", POSTHOC_TRAIN_SPLIT)
                store.write_csv(CsvHeaders.POSTHOC_TRAIN_FILE, frame[list(CsvHeaders.POSTHOC_TRAIN)])
            history = [row for r in results for row in r.history_rows]
            if history:
                store.write_csv(CsvHeaders.HISTORY_FILE, pd.DataFrame(history, columns=CsvHeaders.HISTORY))
            points = [row for r in results for row in r.operating_points]
            if points:
                store.write_csv(
                    CsvHeaders.OPERATING_POINTS_FILE, pd.DataFrame(points, columns=CsvHeaders.OPERATING_POINTS)
                )
            for r in results:
                if r.calibration is not None:
                    store.write_csv(CsvHeaders.calibration_file(r.seed), r.calibration.to_frame())
                for name, data in r.models.items():
                    store.write_json(f"{CsvHeaders.MODELS_DIR}/{name}", data)
            render_curves_svg([(config.scenario, curves)], store.path(CsvHeaders.PLOT_FILE), config.scenario)
            store.write_manifest(config.scenario, resolved, list(config.seeds), digest)
            files = store.files()
        return files

    def run(self) -> dict[str, Any]:
        """Вычислить все зерна, затем записать артефакты."""
        results = [self.run_seed(seed) for seed in self.config.seeds]
        files = self.write(results)
        return {
            "scenario": self.config.scenario,
            "output_dir": str(self.output_dir),
            "seeds": list(self.config.seeds),
            "curves": sum(len(r.curves) for r in results),
            "files": len(files),
        }


@handle_run_errors("Не удалось выполнить сценарий")
def run_scenario(reference: str | Path, output_dir: str | None = None, seed: int | None = None) -> RunResponse:
    """Выполнить сценарий из файла, по имени встроенного или из манифеста."""
    config = load_scenario(reference).with_overrides(output_dir, seed)
    logger.info(f"Запуск сценария {config.scenario}: {config.num_models} модели, {len(config.rules)} правил")
    summary = ScenarioRunner(config).run()
    return RunResponse.success_response(Formatters.format_run_summary(summary), summary)
