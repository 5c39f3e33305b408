"""Configuration loading helpers for girthguard.

This module resolves settings from multiple sources in priority order:

1. Explicit environment variables (already set).
2. Project-local TOML file (for development).
3. The key=value file named by ``GIRTHGUARD_CONFIG``.

Command-line flags override all of them; that happens in ``girthguard.cli``.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path

from girthguard.config import (
    BB_MAX_N_ENV_VAR,
    BRUTE_GUARD_ENV_VAR,
    BRUTE_MAX_N_ENV_VAR,
    CONFIG_FILE_ENV_VAR,
    JOBS_ENV_VAR,
    SHARP_BATCH_ENV_VAR,
    SHARP_SEED_ENV_VAR,
)

try:  # Python 3.11+ provides tomllib
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib  # type: ignore[no-redef]

logger = logging.getLogger(__name__)

LOCAL_CONFIG_NAME = "girthguard.local.toml"
SECTION_NAME = "girthguard"
PROJECT_ROOT = Path(__file__).parent.parent

_SETTING_ENV_MAP = {
    "brute_max_n": BRUTE_MAX_N_ENV_VAR,
    "bb_max_n": BB_MAX_N_ENV_VAR,
    "brute_guard": BRUTE_GUARD_ENV_VAR,
    "sharp_random_batch": SHARP_BATCH_ENV_VAR,
    "sharp_seed": SHARP_SEED_ENV_VAR,
    "jobs": JOBS_ENV_VAR,
}


def load_runtime_configuration() -> None:
    """Load settings from the project-local file and ``GIRTHGUARD_CONFIG``."""
    local_config = PROJECT_ROOT / LOCAL_CONFIG_NAME
    if local_config.exists():
        _load_toml_config(local_config)

    config_path = determine_config_file()
    if config_path is None:
        return
    if not config_path.exists():
        raise RuntimeError(
            f"{CONFIG_FILE_ENV_VAR} points to a missing file: {config_path}"
        )
    _load_toml_config(config_path)


def determine_config_file() -> Path | None:
    """Return the path named by ``GIRTHGUARD_CONFIG``, if any."""
    value = os.environ.get(CONFIG_FILE_ENV_VAR)
    if not value:
        return None
    return Path(value).expanduser()


def _load_toml_config(path: Path) -> None:
    """Load a key=value TOML file and apply known keys to the environment."""
    try:
        with path.open("rb") as file:
            data = tomllib.load(file)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise RuntimeError(
            f"Failed to load girthguard config file at {path}: {exc}"
        ) from exc

    if not isinstance(data, dict):
        return

    section = data.get(SECTION_NAME)
    values = dict(data)
    if isinstance(section, dict):
        values.update(section)

    for key, value in values.items():
        if key == SECTION_NAME:
            continue
        env_var = _SETTING_ENV_MAP.get(key)
        if env_var is None:
            logger.debug("Ignoring unknown config key '%s' in %s", key, path)
            continue
        if value is not None and value != "":
            _set_env_if_missing(env_var, str(value))


def _set_env_if_missing(name: str, value: str) -> None:
    """Set environment variable if it is currently unset or empty."""
    current = os.environ.get(name)
    if current:
        return
    os.environ[name] = value
