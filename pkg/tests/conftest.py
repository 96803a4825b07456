import os

import pytest

BASELINE_DIR = os.path.join(os.path.dirname(__file__), "baselines")


@pytest.fixture
def baseline_dir():
    return BASELINE_DIR
