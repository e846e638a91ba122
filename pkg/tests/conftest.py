import random

import pytest
from hypothesis import strategies as st

from fptiso.perm import Permutation


@pytest.fixture
def rng():
    return random.Random(20240531)


@st.composite
def permutations(draw, n=None, max_n=7):
    if n is None:
        n = draw(st.integers(min_value=0, max_value=max_n))
    return Permutation(draw(st.permutations(list(range(n)))))


@st.composite
def perm_pairs(draw, max_n=7):
    n = draw(st.integers(min_value=0, max_value=max_n))
    return draw(permutations(n=n)), draw(permutations(n=n))


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion."""
    lines = request.config.stash[ACCEPTANCE]

    def record(number, title, ok, detail):
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
