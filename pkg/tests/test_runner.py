import json

import pandas as pd
import pytest

from src.main import build_parser, main
from src.services.compare import COMPARE_RATES, compare_report
from src.services.runner import ScenarioRunner, run_scenario
from src.services.scenario import ScenarioConfig
from src.shared.decorators import handle_run_errors
from src.shared.errors import IncompatibleRunsError, TrainingDivergenceError
from src.shared.responses import RunResponse
from src.storage.artifacts import read_curves, read_manifest
from src.storage.columns import CsvHeaders
from tests.conftest import tiny_scenario

DETERMINISTIC_FILES = (
    CsvHeaders.CURVES_FILE,
    CsvHeaders.POSTHOC_TRAIN_FILE,
    CsvHeaders.HISTORY_FILE,
    CsvHeaders.calibration_file(5),
    CsvHeaders.PLOT_FILE,
)


@pytest.fixture
def tiny_run(tmp_path, write_config):
    out = tmp_path / "first"
    response = run_scenario(write_config(tiny_scenario()), str(out))
    assert response.success, response.message
    return out


def test_run_writes_all_artifacts(tiny_run):
    names = {p.relative_to(tiny_run).as_posix() for p in tiny_run.rglob("*") if p.is_file()}
    assert set(DETERMINISTIC_FILES) | {CsvHeaders.MANIFEST_FILE} <= names
    assert "models/posthoc-diff-01-seed5.json" in names

    curves = read_curves(tiny_run / CsvHeaders.CURVES_FILE)
    assert list(dict.fromkeys(curves["rule"])) == ["confidence", "random", "bayes", "posthoc-diff-01"]
    assert len(curves) == 4 * 7
    assert curves["relative_cost"].notna().all()

    manifest = read_manifest(tiny_run)
    assert manifest["seeds"] == [5]
    assert set(manifest["files"]) == names - {CsvHeaders.MANIFEST_FILE}


def test_rerun_is_bit_identical(tiny_run, tmp_path, write_config):
    second = tmp_path / "second"
    assert run_scenario(write_config(tiny_scenario(), "again.json"), str(second)).success
    for name in DETERMINISTIC_FILES:
        assert (tiny_run / name).read_bytes() == (second / name).read_bytes(), name


def test_rerun_from_manifest_reproduces_curves(tiny_run, tmp_path):
    replay = tmp_path / "replay"
    assert main(["run", str(tiny_run / CsvHeaders.MANIFEST_FILE), "--out", str(replay)]) == 0
    assert (tiny_run / CsvHeaders.CURVES_FILE).read_bytes() == (replay / CsvHeaders.CURVES_FILE).read_bytes()
    assert read_manifest(tiny_run)["config_hash"] == read_manifest(replay)["config_hash"]


def test_malformed_config_leaves_no_output(tmp_path, write_config):
    out = tmp_path / "bad"
    response = run_scenario(write_config(tiny_scenario(colour="red")), str(out))
    assert not response.success
    assert response.exit_code == 2
    assert "colour" in response.message
    assert not out.exists()
    assert main(["run", str(tmp_path / "nowhere.json"), "--out", str(out)]) == 2


def test_compare_with_itself_has_zero_deltas(tiny_run):
    report = compare_report(tiny_run, tiny_run / CsvHeaders.MANIFEST_FILE)
    assert len(report.rows) == 4 * len(COMPARE_RATES)
    assert report.max_abs_delta == 0.0
    assert report.all_within_band
    assert report.missing == []
    assert "confidence" in report.to_text()


def test_compare_different_seeds_within_band(tmp_path, write_config):
    config = write_config(tiny_scenario())
    run_a, run_b = tmp_path / "a", tmp_path / "b"
    assert run_scenario(config, str(run_a), 1).success
    assert run_scenario(config, str(run_b), 2).success
    report = compare_report(run_a, run_b)
    assert report.max_abs_delta > 0.0
    assert all(row["within_band"] for row in report.rows if row["rule"] in {"confidence", "random", "bayes"})


def test_compare_rejects_different_scenarios(tiny_run, tmp_path, write_config):
    other = tmp_path / "other"
    assert run_scenario(write_config(tiny_scenario(scenario="other"), "other.json"), str(other)).success
    with pytest.raises(IncompatibleRunsError):
        compare_report(tiny_run, other)
    assert main(["compare", str(tiny_run), str(other)]) == 2


def test_plot_command(tiny_run, tmp_path):
    out = tmp_path / "plot.svg"
    assert main(["plot", str(tiny_run / CsvHeaders.CURVES_FILE), "--out", str(out), "--title", "tiny"]) == 0
    assert out.read_text(encoding="utf-8").count('id="curve-') == 4
    assert main(["plot", str(tmp_path / "missing.csv"), "--out", str(out)]) == 4


def test_parser_usage_errors_exit_with_two():
    with pytest.raises(SystemExit) as error:
        build_parser().parse_args(["run"])
    assert error.value.code == 2
    with pytest.raises(SystemExit) as error:
        main(["fly"])
    assert error.value.code == 2


def test_error_codes_follow_exception_type():
    @handle_run_errors("сбой")
    def diverge() -> RunResponse:
        msg = "потери стали NaN"
        raise TrainingDivergenceError(msg)

    @handle_run_errors("сбой")
    def crash() -> RunResponse:
        msg = "неожиданно"
        raise RuntimeError(msg)

    assert diverge().exit_code == 3
    response = crash()
    assert (response.success, response.exit_code) == (False, 1)
    assert response.message.startswith("сбой")


def test_three_model_scenario_runs(tmp_path):
    data = tiny_scenario(
        models=[
            {"name": "small", "kind": "analytic", "feature_dims": [0]},
            {"name": "medium", "kind": "analytic", "feature_dims": [0, 1]},
            {"name": "large", "kind": "analytic"},
        ],
        rules=[{"kind": "confidence"}, {"kind": "posthoc", "target": "diff-prob"}],
    )
    data["evaluation"]["inference_costs"] = [1, 2, 8]
    config = ScenarioConfig.from_dict(data).with_overrides(output_dir=str(tmp_path / "k3"))
    summary = ScenarioRunner(config).run()
    assert summary["curves"] == 2
    history = pd.read_csv(tmp_path / "k3" / CsvHeaders.HISTORY_FILE)
    assert set(history["rule"]) == {"posthoc-diff-prob-stage1", "posthoc-diff-prob-stage2"}
    models = json.loads((tmp_path / "k3" / "models" / "posthoc-diff-prob-stage2-seed5.json").read_text("utf-8"))
    assert models["target_kind"] == "diff-prob"
