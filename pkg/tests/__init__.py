"""Tests for girthguard."""
