"""Command-line entrypoint: python -m app_cli <command> ..."""

from app.presentation.cli.main import main  # noqa: F401

__all__ = ["main"]
