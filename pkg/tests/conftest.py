import itertools

import pytest

from nanophrase.core import HomotopyData, preset

ACCEPTANCE_LINES: list[str] = []


def make_data(k: int, l: int, s: str = "diagonal", nu=None) -> HomotopyData:
    """``k`` fixed symbols a, b, c and ``l`` free pairs (p P), (q Q), (r R)."""
    fixed = [chr(ord("a") + i) for i in range(k)]
    free = [(chr(ord("p") + i), chr(ord("P") + i)) for i in range(l)]
    alpha = fixed + [x for pair in free for x in pair]
    triples = {
        "empty": set(),
        "diagonal": {(a, a, a) for a in alpha},
        "full": set(itertools.product(alpha, repeat=3)),
    }[s]
    return HomotopyData.build(alpha, free, triples, nu)


@pytest.fixture(scope="session")
def gauss():
    return preset("gauss")


@pytest.fixture(scope="session")
def vknot():
    return preset("vknot")


@pytest.fixture(scope="session")
def mixed():
    """One free orbit (a b) and one fixed symbol c, S diagonal."""
    return HomotopyData.build(("a", "b", "c"), [("a", "b")], {("a", "a", "a"), ("b", "b", "b"),
                                                              ("c", "c", "c")})


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
