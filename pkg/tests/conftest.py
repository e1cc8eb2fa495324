import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracle module

from gridperc.pipelines import Builder


@pytest.fixture(scope="session")
def builder() -> Builder:
    """One shared Builder: witness resolution is memoized across tests."""
    return Builder()
