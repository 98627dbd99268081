import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polardict.geometry import ArrayConfig


@pytest.fixture(scope="session")
def paper_array():
    """64x32 quarter-wavelength array at 3 GHz; near field spans 4.7 m to 64 m."""
    return ArrayConfig(64, 32, 0.025, 0.1)


@pytest.fixture(scope="session")
def reduced_array():
    """16x8 CI-scale array; near field spans 0.59 m to 4 m."""
    return ArrayConfig(16, 8, 0.025, 0.1)
