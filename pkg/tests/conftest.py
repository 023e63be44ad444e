from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CRITERIA = pytest.StashKey[list]()


def rationals(bound: int = 100, max_den: int = 50):
    return st.builds(
        Fraction,
        st.integers(-bound * max_den, bound * max_den),
        st.integers(1, max_den),
    )


def pytest_configure(config):
    config.stash[CRITERIA] = []


@pytest.fixture
def criterion(request):
    """``criterion(k, ok, detail)`` records one pass/fail line for the summary."""
    lines = request.config.stash[CRITERIA]

    def record(k: int, ok: bool, detail: str) -> bool:
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append((k, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(CRITERIA, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
