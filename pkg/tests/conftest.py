import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polymat.generate import instances  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def random_instances():
    return instances(100, seed=0)


@pytest.fixture(scope="session")
def golden():
    return GOLDEN


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
