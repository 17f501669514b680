import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings

from laxcat import fixtures as fx
from laxcat.laxcomma import Workspace

settings.register_profile("laxcat", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("laxcat")

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def ws2():
    return Workspace(fx.x2())


@pytest.fixture(scope="session")
def ws3():
    return Workspace(fx.x3())


@pytest.fixture(scope="session")
def wsd():
    return Workspace(fx.diamond())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
