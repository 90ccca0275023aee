import functools

import pytest

from pbeauville.forge import construct_abelian, construct_pquotient
from pbeauville.group import ConcreteGroup
from pbeauville.pc import parse_presentation

HEISENBERG_5 = "p 5\nn 3\ncomm 2 1 : 3^1\n"
C25 = "p 5\nn 2\npow 1 : 2^1\n"


@functools.lru_cache(maxsize=None)
def pq(p, m):
    return ConcreteGroup(construct_pquotient((p, m)))


@functools.lru_cache(maxsize=None)
def abelian(n1, n2):
    return ConcreteGroup(construct_abelian(n1, n2))


@functools.lru_cache(maxsize=None)
def from_text(text):
    return ConcreteGroup(parse_presentation(text))


@pytest.fixture
def heis():
    return from_text(HEISENBERG_5)


@pytest.fixture
def c25():
    return from_text(C25)


# acceptance verdicts, echoed again at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
