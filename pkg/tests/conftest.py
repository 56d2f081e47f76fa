import sys

import pytest

from heckelab import class_numbers


@pytest.fixture(scope="session", autouse=True)
def _hurwitz_table():
    # Every test shares one in-memory table; 4 * 16**2 covers T_16 products at j <= 2.
    class_numbers.preload(1024)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
