import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "heatgraph", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("heatgraph")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# acceptance criteria report one line each; the lines are collected here and
# printed as a block at the end of the run
ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance criterion.

    Usage: ``criterion(number, description, passed, detail)``; the test must
    still assert on ``passed``.
    """
    def record(number, description, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number:2d}: {status}  {description}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
