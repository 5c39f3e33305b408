#!/usr/bin/env python3
"""Standalone entry point so developers can run `uv run python main.py` locally."""

from girthguard.cli import main


if __name__ == "__main__":
    main()
