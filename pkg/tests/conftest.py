from __future__ import annotations

import pytest
from hypothesis import strategies as st

from quartic_cert.exactfield import CycNum, Rat

ACCEPTANCE_LINES: list[str] = []

small_ints = st.integers(min_value=-50, max_value=50)
rationals = st.builds(lambda n, d: Rat(n, d), small_ints, st.integers(min_value=1, max_value=20))
cycnums = st.builds(CycNum, rationals, rationals)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def w():
    return CycNum(0, 1)
