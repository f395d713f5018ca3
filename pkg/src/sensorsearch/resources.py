"""Locating the bundled fixture files (gazetteer, filter criteria, corpora)."""

from __future__ import annotations

import os
from pathlib import Path

FIXTURES_ENV = "SENSORSEARCH_FIXTURES"


def fixtures_root() -> Path:
    """The fixture directory, overridable via ``SENSORSEARCH_FIXTURES``."""
    override = os.environ.get(FIXTURES_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "fixtures"


def fixture_path(*parts: str) -> Path:
    return fixtures_root().joinpath(*parts)
