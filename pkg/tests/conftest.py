import pytest

from terracini.arith import MERSENNE_61, random_primes

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def p():
    return MERSENNE_61


@pytest.fixture(scope="session")
def primes():
    return random_primes(3, 20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
