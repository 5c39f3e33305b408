"""Configuration settings for girthguard."""

import logging
import os
from pathlib import Path

logger = logging.getLogger(__name__)

# Environment variables
CONFIG_FILE_ENV_VAR = "GIRTHGUARD_CONFIG"
BRUTE_MAX_N_ENV_VAR = "GIRTHGUARD_BRUTE_MAX_N"
BB_MAX_N_ENV_VAR = "GIRTHGUARD_BB_MAX_N"
BRUTE_GUARD_ENV_VAR = "GIRTHGUARD_BRUTE_GUARD"
SHARP_BATCH_ENV_VAR = "GIRTHGUARD_SHARP_BATCH"
SHARP_SEED_ENV_VAR = "GIRTHGUARD_SHARP_SEED"
JOBS_ENV_VAR = "GIRTHGUARD_JOBS"

# Solver thresholds ("auto" picks brute force up to DEFAULT_BRUTE_MAX_N vertices,
# branch-and-bound up to DEFAULT_BB_MAX_N, and skips anything larger)
DEFAULT_BRUTE_MAX_N = 14
DEFAULT_BB_MAX_N = 60
DEFAULT_BRUTE_GUARD = 20

# Sharpness search
DEFAULT_SHARP_RANDOM_BATCH = 20
DEFAULT_SHARP_SEED = 1
SHARP_MAX_N = 20

# Corpus runner
DEFAULT_JOBS = 1

# Numeric comparisons between real bounds and integer domination numbers
TOLERANCE = 1e-9

# Report format
REPORT_SCHEMA_VERSION = 1

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT_FORMAT = 2
EXIT_VERIFICATION = 3

SOLVER_METHODS = ("auto", "brute", "bb")
CORPUS_SOLVER_METHODS = ("auto", "brute", "bb", "skip")

# Project Paths
PROJECT_ROOT = Path(__file__).parent.parent


def resolve_positive_int(env_var: str, default: int) -> int:
    """Resolve a positive integer setting from the environment.

    Invalid values fall back to ``default`` with a warning.
    """
    value = os.environ.get(env_var)
    if value is None or value == "":
        return default

    try:
        number = int(value)
        if number <= 0:
            raise ValueError
        return number
    except ValueError:
        logger.warning(
            "Invalid value '%s' for %s. Falling back to %d.",
            value,
            env_var,
            default,
        )
        return default


def get_brute_max_n() -> int:
    """Largest vertex count the "auto" method hands to brute force."""
    return resolve_positive_int(BRUTE_MAX_N_ENV_VAR, DEFAULT_BRUTE_MAX_N)


def get_bb_max_n() -> int:
    """Largest vertex count the "auto" method hands to branch-and-bound."""
    return resolve_positive_int(BB_MAX_N_ENV_VAR, DEFAULT_BB_MAX_N)


def get_brute_guard() -> int:
    """Hard vertex-count guard for the brute-force oracle."""
    return resolve_positive_int(BRUTE_GUARD_ENV_VAR, DEFAULT_BRUTE_GUARD)


def get_sharp_random_batch() -> int:
    return resolve_positive_int(SHARP_BATCH_ENV_VAR, DEFAULT_SHARP_RANDOM_BATCH)


def get_sharp_seed() -> int:
    return resolve_positive_int(SHARP_SEED_ENV_VAR, DEFAULT_SHARP_SEED)


def get_jobs() -> int:
    return resolve_positive_int(JOBS_ENV_VAR, DEFAULT_JOBS)
