import json

import pandas as pd
import pytest

from src.shared.errors import ArtifactIOError
from src.storage.artifacts import (
    ArtifactStore,
    canonical_json,
    config_hash,
    file_sha256,
    read_curves,
    read_manifest,
)
from src.storage.columns import CsvHeaders


def _curves_frame():
    return pd.DataFrame(
        [
            {
                "rule": "confidence",
                "scenario": "tiny",
                "seed": 0,
                "threshold": "0.5",
                "deferral_rate": 0.1,
                "accuracy": 0.7,
                "risk": 0.3,
                "relative_cost": float("nan"),
            }
        ],
        columns=CsvHeaders.CURVES,
    )


def test_canonical_json_ignores_key_order():
    assert canonical_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
    assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})
    assert config_hash({"a": 1}) != config_hash({"a": 2})


def test_transaction_commits_all_files(tmp_path):
    out = tmp_path / "run"
    store = ArtifactStore(out)
    with store.transaction():
        store.write_csv(CsvHeaders.CURVES_FILE, _curves_frame())
        store.write_json("models/g.json", {"x": 1})
        assert not out.exists()
        store.write_manifest("tiny", {"scenario": "tiny"}, [0], "abc")
    assert sorted(p.name for p in out.iterdir()) == ["curves.csv", "manifest.json", "models"]
    assert [p.name for p in tmp_path.iterdir()] == ["run"]
    text = (out / "curves.csv").read_text(encoding="utf-8")
    assert text.splitlines()[1].endswith(",0.1,0.7,0.3,")


def test_transaction_abort_keeps_previous_run(tmp_path):
    out = tmp_path / "run"
    out.mkdir()
    (out / "old.txt").write_text("old", encoding="utf-8")
    store = ArtifactStore(out)
    with pytest.raises(RuntimeError), store.transaction():
        store.write_json("new.json", {})
        raise RuntimeError("boom")
    assert [p.name for p in out.iterdir()] == ["old.txt"]
    assert [p.name for p in tmp_path.iterdir()] == ["run"]


def test_manifest_lists_file_hashes(tmp_path):
    out = tmp_path / "run"
    store = ArtifactStore(out)
    with store.transaction():
        store.write_csv(CsvHeaders.CURVES_FILE, _curves_frame())
        store.write_manifest("tiny", {"scenario": "tiny", "seed": 3}, [3], config_hash({"scenario": "tiny"}))
    manifest = read_manifest(out)
    assert manifest["scenario"] == "tiny"
    assert manifest["seeds"] == [3]
    assert manifest["files"] == {"curves.csv": file_sha256(out / "curves.csv")}
    assert {"numpy", "pandas", "python"} <= set(manifest["versions"])
    assert read_manifest(out / CsvHeaders.MANIFEST_FILE) == manifest


def test_store_requires_open(tmp_path):
    with pytest.raises(ArtifactIOError):
        ArtifactStore(tmp_path / "run").write_json("a.json", {})


def test_read_manifest_rejects_other_json(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"hello": 1}), encoding="utf-8")
    with pytest.raises(ArtifactIOError):
        read_manifest(path)
    with pytest.raises(ArtifactIOError):
        read_manifest(tmp_path / "missing.json")


def test_read_curves_checks_header(tmp_path):
    good = tmp_path / "curves.csv"
    _curves_frame().to_csv(good, index=False)
    frame = read_curves(good)
    assert frame.loc[0, "threshold"] == "0.5"

    bad = tmp_path / "bad.csv"
    bad.write_text("rule,accuracy\nx,0.5\n", encoding="utf-8")
    with pytest.raises(ArtifactIOError):
        read_curves(bad)
    header_only = tmp_path / "header.csv"
    header_only.write_text(",".join(CsvHeaders.CURVES) + "\n", encoding="utf-8")
    with pytest.raises(ArtifactIOError):
        read_curves(header_only)
    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(ArtifactIOError):
        read_curves(empty)
