import numpy as np
import pytest

from _scenarios import demo_scenario

ACCEPTANCE_LINES = []


@pytest.fixture
def demo():
    return demo_scenario()


@pytest.fixture
def rng():
    return np.random.default_rng(20181016)


@pytest.fixture
def record_criterion():
    """Record one acceptance criterion's outcome, then assert it."""

    def record(label, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        print(ACCEPTANCE_LINES[-1])
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
