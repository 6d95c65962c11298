import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from higher_skein.fixtures import classical_fixtures  # noqa: E402
from higher_skein.skein import default_context  # noqa: E402


@pytest.fixture(scope="session")
def ctx():
    return default_context(12)


@pytest.fixture(scope="session")
def links():
    return classical_fixtures()
