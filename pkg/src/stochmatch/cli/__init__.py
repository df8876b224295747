"""CLI interface for stochmatch."""

from stochmatch.cli.main import main

__all__ = ["main"]
