"""Shared helpers: error types, message trimming and tolerance comparisons."""

from __future__ import annotations

import math

from girthguard.config import TOLERANCE


class PreconditionError(ValueError):
    """An operation was called outside its documented preconditions."""


class VerificationError(RuntimeError):
    """A certificate produced internally failed its own re-check."""


def format_error_message(error: Exception | str, limit: int = 400) -> str:
    """Trim error output to avoid flooding logs with large payloads."""
    message = str(error).strip()
    if len(message) > limit:
        message = message[:limit] + "... (truncated)"
    if not message and isinstance(error, Exception):
        return error.__class__.__name__
    return message


def at_least(value: float, bound: float, tolerance: float = TOLERANCE) -> bool:
    """True when ``value >= bound`` up to the comparison tolerance."""
    return value >= bound - tolerance


def is_tight(value: float, bound: float, tolerance: float = TOLERANCE) -> bool:
    return abs(value - bound) <= tolerance


def ceil_tolerant(value: float, tolerance: float = TOLERANCE) -> int:
    """Ceiling that ignores floating-point noise just above an integer."""
    return math.ceil(value - tolerance)
