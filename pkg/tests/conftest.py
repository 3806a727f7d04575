import sys

import pytest
from hypothesis import strategies as st

from poset_assoc.poset import Poset


def make_z5():
    return Poset("abcpq", [("a", "p"), ("b", "p"), ("b", "q"), ("c", "q")])


def make_m():
    return Poset(["u", "v", "e1", "e2"], [("u", "e1"), ("v", "e1"), ("u", "e2"), ("v", "e2")])


def make_b3():
    return Poset("mpqr", [("m", "p"), ("m", "q"), ("m", "r")])


@pytest.fixture
def Z5():
    return make_z5()


@pytest.fixture
def M():
    return make_m()


@pytest.fixture
def B3():
    return make_b3()


@st.composite
def posets(draw, min_size=1, max_size=7, connected=None):
    """Random posets: a random upper-triangular relation, closed by the constructor."""
    n = draw(st.integers(min_size, max_size))
    names = draw(st.permutations([f"e{i}" for i in range(n)]))
    rel = []
    for j in range(n):
        for i in range(j):
            if draw(st.booleans()):
                rel.append((names[i], names[j]))
    P = Poset(names, rel)
    if connected is not None:
        from hypothesis import assume
        assume(P.is_connected() == connected)
    return P


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=lambda k: int(k[1:])):
        terminalreporter.write_line(mod.RESULTS[key])
