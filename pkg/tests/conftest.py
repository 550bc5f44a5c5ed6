import hypothesis.strategies as st
import pytest
from hypothesis import settings

from stsdiscord.states import StsParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(label, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def sts_params(max_r=2.0, max_n=100.0):
    return st.builds(
        StsParams,
        st.floats(0.0, max_r),
        st.floats(0.0, max_n),
        st.floats(0.0, max_n),
    )
