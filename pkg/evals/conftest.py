"""Shared pytest fixtures for the eval suite."""

from __future__ import annotations

from pathlib import Path

import pytest

from pullback.algebra import NumberField, parse_field_tower
from pullback.config import get_settings
from pullback.portrait import Portrait
from pullback.schemas import PortraitModel

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def load_portrait_fixture(name: str) -> Portrait:
    """Portrait from ``evals/fixtures/<name>.json``, named after the file."""
    path = FIXTURES_DIR / f"{name}.json"
    return PortraitModel.model_validate_json(path.read_text()).to_portrait(name=name)


@pytest.fixture()
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture(scope="session")
def omega() -> NumberField:
    """``Q(w)`` with ``w^2 + w + 1 = 0``."""
    return parse_field_tower(["w^2+w+1"])


@pytest.fixture(scope="session")
def omega_cbrt2() -> NumberField:
    """``Q(w)[s]/(s^3 - 2)``: holds the source markings of the Lattès quartic."""
    return parse_field_tower(["w^2+w+1", "s^3-2"])


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch: pytest.MonkeyPatch):
    """Drop cached settings so tests that set PULLBACK_* see their values."""
    for var in ("PULLBACK_PRECISION", "PULLBACK_SEED", "PULLBACK_LOG_LEVEL"):
        monkeypatch.delenv(var, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
