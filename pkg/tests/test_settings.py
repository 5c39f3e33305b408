"""Tests for girthguard.settings."""

import os

import pytest

from girthguard import settings
from girthguard.config import (
    BB_MAX_N_ENV_VAR,
    BRUTE_MAX_N_ENV_VAR,
    CONFIG_FILE_ENV_VAR,
    JOBS_ENV_VAR,
    get_bb_max_n,
    get_brute_max_n,
)


@pytest.fixture
def project_root(monkeypatch, tmp_path):
    """Point the local-config lookup at an empty temporary project."""
    root = tmp_path / "proj"
    root.mkdir()
    monkeypatch.setattr(settings, "PROJECT_ROOT", root)
    return root


def test_determine_config_file_reads_env(monkeypatch, tmp_path):
    """GIRTHGUARD_CONFIG names the config file."""
    target = tmp_path / "custom.toml"
    monkeypatch.setenv(CONFIG_FILE_ENV_VAR, str(target))

    assert settings.determine_config_file() == target


def test_determine_config_file_unset():
    assert settings.determine_config_file() is None


def test_load_runtime_configuration_reads_toml(monkeypatch, tmp_path, project_root):
    """Values from the config file populate environment variables."""
    config_file = tmp_path / "girthguard.toml"
    config_file.write_text(
        """
brute_max_n = 12

[girthguard]
bb_max_n = 40
jobs = 4
unknown_key = "ignored"
"""
    )
    monkeypatch.setenv(CONFIG_FILE_ENV_VAR, str(config_file))

    settings.load_runtime_configuration()

    assert os.environ[BRUTE_MAX_N_ENV_VAR] == "12"
    assert os.environ[BB_MAX_N_ENV_VAR] == "40"
    assert os.environ[JOBS_ENV_VAR] == "4"


def test_environment_wins_over_file(monkeypatch, tmp_path, project_root):
    """Explicit environment variables are never overwritten."""
    config_file = tmp_path / "girthguard.toml"
    config_file.write_text("bb_max_n = 40\n")
    monkeypatch.setenv(CONFIG_FILE_ENV_VAR, str(config_file))
    monkeypatch.setenv(BB_MAX_N_ENV_VAR, "25")

    settings.load_runtime_configuration()

    assert os.environ[BB_MAX_N_ENV_VAR] == "25"


def test_local_config_takes_precedence(monkeypatch, tmp_path, project_root):
    """Project-local config should override the GIRTHGUARD_CONFIG file."""
    (project_root / settings.LOCAL_CONFIG_NAME).write_text(
        """
[girthguard]
brute_max_n = 8
"""
    )
    config_file = tmp_path / "girthguard.toml"
    config_file.write_text(
        """
[girthguard]
brute_max_n = 12
jobs = 3
"""
    )
    monkeypatch.setenv(CONFIG_FILE_ENV_VAR, str(config_file))

    settings.load_runtime_configuration()

    assert os.environ[BRUTE_MAX_N_ENV_VAR] == "8"
    assert os.environ[JOBS_ENV_VAR] == "3"


def test_config_file_applies_in_source_checkout(monkeypatch, tmp_path):
    """The shipped local file leaves GIRTHGUARD_CONFIG in charge."""
    assert (settings.PROJECT_ROOT / settings.LOCAL_CONFIG_NAME).exists()
    config_file = tmp_path / "girthguard.toml"
    config_file.write_text("brute_max_n = 8\nbb_max_n = 30\n")
    monkeypatch.setenv(CONFIG_FILE_ENV_VAR, str(config_file))

    settings.load_runtime_configuration()

    assert get_brute_max_n() == 8
    assert get_bb_max_n() == 30


def test_missing_config_file_is_an_error(monkeypatch, tmp_path, project_root):
    monkeypatch.setenv(CONFIG_FILE_ENV_VAR, str(tmp_path / "absent.toml"))

    with pytest.raises(RuntimeError, match="missing file"):
        settings.load_runtime_configuration()


def test_malformed_toml_is_an_error(monkeypatch, tmp_path, project_root):
    config_file = tmp_path / "broken.toml"
    config_file.write_text("brute_max_n = = 3\n")
    monkeypatch.setenv(CONFIG_FILE_ENV_VAR, str(config_file))

    with pytest.raises(RuntimeError, match="Failed to load"):
        settings.load_runtime_configuration()
