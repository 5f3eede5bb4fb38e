import random

import pytest

from cdsalign import ScoringScheme
from cdsalign.oracle import random_coding_sequence, random_scheme

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def default_scheme():
    return ScoringScheme()


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def random_pair(rng):
    def make(max_codons=8):
        a = random_coding_sequence(rng, rng.randint(1, max_codons), "A")
        b = random_coding_sequence(rng, rng.randint(1, max_codons), "B")
        return a, b
    return make


@pytest.fixture
def random_schemes(rng):
    return [random_scheme(rng) for _ in range(4)]
