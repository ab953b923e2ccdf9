import time

import pytest
from hypothesis import HealthCheck, settings

from rosserlog.decide import Decider

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# one line per acceptance criterion, printed again in the terminal summary
CRITERIA: list[str] = []


@pytest.fixture(scope="session")
def dec():
    return Decider()


class Criterion:
    """Times a block and records PASS/FAIL for one acceptance criterion."""

    def __init__(self, number: int, title: str, limit: float | None = None):
        self.number, self.title, self.limit = number, title, limit
        self.notes: list[str] = []

    def note(self, msg: str):
        self.notes.append(msg)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        ok = exc_type is None
        over = self.limit is not None and dt > self.limit
        if over:
            self.notes.append(f"over the {self.limit:g}s limit")
        if exc_type is not None:
            self.notes.append(f"{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
        status = "PASS" if ok and not over else "FAIL"
        line = f"{status} criterion {self.number:>2}: {self.title} [{dt:.2f}s]"
        if self.notes:
            line += " -- " + "; ".join(self.notes)
        CRITERIA.append(line)
        print(line)
        if ok and over:
            raise AssertionError(f"criterion {self.number} took {dt:.1f}s, limit {self.limit:g}s")
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
