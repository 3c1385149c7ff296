from __future__ import annotations

import os

import pytest
from hypothesis import settings

from cbrdiag import CaseBase, decode_case_base

settings.register_profile("thorough", max_examples=200, deadline=None)
settings.load_profile("thorough")

FIXTURE_PATH = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), os.pardir, "data", "engine_case_base.json"
)


@pytest.fixture(scope="session")
def fixture_path() -> str:
    return os.path.normpath(FIXTURE_PATH)


@pytest.fixture(scope="session")
def fixture_text() -> str:
    with open(FIXTURE_PATH, encoding="utf-8") as handle:
        return handle.read()


@pytest.fixture(scope="session")
def engine_case_base(fixture_text: str) -> CaseBase:
    return decode_case_base(fixture_text)
