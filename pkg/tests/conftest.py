from __future__ import annotations

from pathlib import Path

import pytest

PKG_ROOT = Path(__file__).resolve().parents[1]
ASSETS = PKG_ROOT / "src" / "pseudoexec" / "assets"


@pytest.fixture(scope="session")
def assets_dir() -> Path:
    return ASSETS


@pytest.fixture(scope="session")
def paper_fixture_dir() -> Path:
    return ASSETS / "fixtures" / "paper"


@pytest.fixture(scope="session")
def replay_fixture_dir() -> Path:
    return ASSETS / "fixtures" / "replay"


@pytest.fixture(scope="session")
def cassette_path() -> Path:
    return ASSETS / "replay" / "cassette.jsonl"
