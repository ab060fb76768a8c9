import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large], derandomize=True
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


@pytest.fixture(scope="session")
def cd36():
    from ramanujan_ldpc.builders import build_cd_regular

    return build_cd_regular(3, 6, q=13, measure_girth=True)


@pytest.fixture(scope="session")
def irregular13():
    from ramanujan_ldpc.builders import build_irregular
    from ramanujan_ldpc.ddp import DegreeDistributionPair

    ddp = DegreeDistributionPair({3: "1/2", 5: "1/2"}, {15: 1})
    return build_irregular(ddp, q=13, seed=7)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance verdict; the lines are echoed in the terminal summary."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title}" + (f"  [{detail}]" if detail else "")
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
