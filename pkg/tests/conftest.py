import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kinv.diagrams import braid_to_long_knot, load_table  # noqa: E402


@pytest.fixture(scope="session")
def table():
    return load_table()


@pytest.fixture(scope="session")
def long_knot(table):
    def get(name, presentation=0):
        return braid_to_long_knot(table[name][presentation])

    return get


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.split()[0]), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
