import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sololab.tm import parse_machine  # noqa: E402

COPIER = """\
states 1
0 0 -> noread (0 S - 0)
0 1 -> noread (0 S - 0)
0 B -> read (B S 0 0)(B S 1 0)
"""

# two steps per bit: read into state 1, then emit from the work tape
SLOW_COPIER = """\
states 2
0 0 -> noread (0 S - 0)
0 1 -> noread (1 S - 0)
0 B -> read (0 S - 1)(1 S - 1)
1 0 -> noread (B S 0 0)
1 1 -> noread (B S 1 0)
1 B -> noread (B S - 0)
"""

EMITTER0 = """\
states 1
0 0 -> noread (B S 0 0)
0 1 -> noread (B S 0 0)
0 B -> noread (B S 0 0)
"""

# emits the first input bit, then halts
ECHO_ONCE = """\
states 1
0 0 -> noread (B S - H)
0 1 -> noread (B S - H)
0 B -> read (B S 0 H)(B S 1 H)
"""


@pytest.fixture
def copier():
    return parse_machine(COPIER)


@pytest.fixture
def slow_copier():
    return parse_machine(SLOW_COPIER)


@pytest.fixture
def emitter0():
    return parse_machine(EMITTER0)


@pytest.fixture
def echo_once():
    return parse_machine(ECHO_ONCE)


_ACCEPTANCE_LINES = []


def record_acceptance(line: str):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
