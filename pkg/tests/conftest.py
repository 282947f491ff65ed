import numpy as np
import pytest

from lipwco.disksup import DiskGrid


@pytest.fixture(scope="session")
def grid():
    return DiskGrid()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record a one-line verdict for the acceptance summary."""
    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
