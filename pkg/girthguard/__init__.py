"""girthguard - domination numbers, girth-based lower bounds and partition certificates."""

__version__ = "0.1.0"
