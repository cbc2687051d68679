import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def golden():
    from fig8jones.golden import load_golden

    return {k: v["value"] for k, v in load_golden().items()}
