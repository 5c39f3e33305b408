"""Tests for configuration module."""

import logging

import girthguard.config as config


class TestConfig:
    """Test configuration values and environment resolvers."""

    def test_solver_defaults(self):
        """Test built-in solver thresholds."""
        assert config.get_brute_max_n() == config.DEFAULT_BRUTE_MAX_N == 14
        assert config.get_bb_max_n() == config.DEFAULT_BB_MAX_N == 60
        assert config.get_brute_guard() == config.DEFAULT_BRUTE_GUARD == 20

    def test_brute_threshold_env_override(self, monkeypatch):
        """Test thresholds can be overridden via environment variable."""
        monkeypatch.setenv(config.BRUTE_MAX_N_ENV_VAR, "10")
        monkeypatch.setenv(config.BB_MAX_N_ENV_VAR, "40")

        assert config.get_brute_max_n() == 10
        assert config.get_bb_max_n() == 40

    def test_invalid_env_value_falls_back(self, monkeypatch, caplog):
        """Non-numeric and non-positive values fall back with a warning."""
        monkeypatch.setenv(config.JOBS_ENV_VAR, "many")
        with caplog.at_level(logging.WARNING, logger="girthguard.config"):
            assert config.get_jobs() == config.DEFAULT_JOBS
        assert "GIRTHGUARD_JOBS" in caplog.text

        monkeypatch.setenv(config.SHARP_SEED_ENV_VAR, "0")
        assert config.get_sharp_seed() == config.DEFAULT_SHARP_SEED

    def test_empty_env_value_uses_default(self, monkeypatch):
        monkeypatch.setenv(config.SHARP_BATCH_ENV_VAR, "")

        assert config.get_sharp_random_batch() == config.DEFAULT_SHARP_RANDOM_BATCH

    def test_exit_codes(self):
        """Test exit code mapping."""
        assert config.EXIT_OK == 0
        assert config.EXIT_USAGE == 1
        assert config.EXIT_INPUT_FORMAT == 2
        assert config.EXIT_VERIFICATION == 3

    def test_tolerance(self):
        assert config.TOLERANCE == 1e-9

    def test_solver_methods(self):
        assert config.SOLVER_METHODS == ("auto", "brute", "bb")
        assert "skip" in config.CORPUS_SOLVER_METHODS

    def test_project_paths(self):
        """Test project paths are set."""
        assert config.PROJECT_ROOT.exists()
        assert (config.PROJECT_ROOT / "girthguard").is_dir()
