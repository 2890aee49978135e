import os
import sys

import pytest

from lambkit import fixtures

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIGS = os.path.join(ROOT, "figs")

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture
def m():
    return fixtures.model_m()


@pytest.fixture
def n():
    return fixtures.model_n()


@pytest.fixture
def figs_dir():
    return FIGS


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
