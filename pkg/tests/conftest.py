import json
from pathlib import Path

import pytest

ACCEPTANCE_LINES: dict[int, str] = {}
DATA = Path(__file__).parent / "data"


def record_criterion(number: int, passed: bool, detail: str) -> str:
    """Print and remember the one-line verdict for an acceptance criterion."""
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


@pytest.fixture(scope="session")
def frozen():
    return json.loads((DATA / "frozen.json").read_text())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
