import logging

from config import DEFAULT_SETTINGS, load_settings, setup_logging


def test_defaults_when_file_missing(tmp_path):
    assert load_settings(tmp_path / "absent.yaml") == DEFAULT_SETTINGS


def test_file_overrides_single_keys(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("quantum:\n  epsilon: 1.0e-3\n", encoding="utf-8")
    settings = load_settings(path)
    assert settings["quantum"]["epsilon"] == 1e-3
    assert settings["quantum"]["max_denominator"] == DEFAULT_SETTINGS["quantum"]["max_denominator"]
    assert settings["deciders"] == DEFAULT_SETTINGS["deciders"]


def test_environment_variable(tmp_path, monkeypatch):
    path = tmp_path / "custom.yaml"
    path.write_text("deciders:\n  max_instructions: 7\n", encoding="utf-8")
    monkeypatch.setenv("NONLOC_SETTINGS", str(path))
    assert load_settings()["deciders"]["max_instructions"] == 7


def test_empty_file(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("", encoding="utf-8")
    assert load_settings(path) == DEFAULT_SETTINGS


def test_shipped_settings_match_defaults():
    assert load_settings() == DEFAULT_SETTINGS


def test_verbose_logging(tmp_path):
    setup_logging(verbose=True)
    assert logging.getLogger("agents").level == logging.DEBUG
    setup_logging(path=tmp_path / "absent.yaml")
    assert logging.getLogger("nonloc").getEffectiveLevel() <= logging.INFO
