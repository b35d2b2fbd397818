import pytest

from src.config import Settings
from src.shared.errors import ConfigurationError


def test_settings_from_env(monkeypatch):
    monkeypatch.setenv("CASCADELAB_THREADS", "3")
    monkeypatch.setenv("CASCADELAB_LOG_LEVEL", "debug")
    monkeypatch.setenv("CASCADELAB_OUTPUT_ROOT", "elsewhere")
    monkeypatch.delenv("CASCADELAB_LOG_FILE", raising=False)
    settings = Settings.from_env()
    assert (settings.threads, settings.log_level, settings.output_root) == (3, "DEBUG", "elsewhere")
    assert settings.log_file is None


@pytest.mark.parametrize("value", ["many", "0"])
def test_bad_thread_count(monkeypatch, value):
    monkeypatch.setenv("CASCADELAB_THREADS", value)
    with pytest.raises(ConfigurationError, match="CASCADELAB_THREADS"):
        Settings.from_env()
