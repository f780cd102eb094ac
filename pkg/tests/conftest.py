import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
FIXTURES = TESTS_DIR / "fixtures"

sys.path.insert(0, str(TESTS_DIR))


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def fig3a_raw_text():
    return (FIXTURES / "fig3a_raw.conllu").read_text(encoding="utf-8")


@pytest.fixture
def fig3_delex_text():
    return (FIXTURES / "fig3_delex.conllu").read_text(encoding="utf-8")
