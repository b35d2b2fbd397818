"""Запись и чтение артефактов запусков."""

from src.storage.artifacts import (
    ArtifactStore,
    canonical_json,
    config_hash,
    file_sha256,
    read_curves,
    read_json,
    read_manifest,
)
from src.storage.columns import CsvHeaders

__all__ = [
    "ArtifactStore",
    "CsvHeaders",
    "canonical_json",
    "config_hash",
    "file_sha256",
    "read_curves",
    "read_json",
    "read_manifest",
]
