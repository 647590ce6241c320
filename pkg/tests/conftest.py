import sys
import warnings
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from monetary_dfm.core import ModelParams, ParameterWarning  # noqa: E402

warnings.simplefilter("ignore", ParameterWarning)


@pytest.fixture
def canonical():
    return ModelParams(beta=0.9, R=1.0, y_L=0.0, y_H=3.0, lam=1.0, theta=0.5, mu=0.0, A=1.0, M=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
