import pytest

from siegel_lab.arith import sieve_primes

# one "PASS/FAIL <id> <name>: <summary>" line per acceptance criterion,
# filled by test_acceptance.py and printed at the end of the session
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def table_1e6():
    return sieve_primes(10**6)


@pytest.fixture(scope="session")
def table_1e4():
    return sieve_primes(10**4)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[cid])
