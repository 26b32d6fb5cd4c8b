import pytest

from randomized import N_RANDOM, random_knot

# (criterion number, description, passed) recorded by test_acceptance.py
ACCEPTANCE = []


@pytest.fixture(scope="session")
def random_knots():
    return [random_knot(seed) for seed in range(N_RANDOM)]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, desc, ok in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {desc}")
