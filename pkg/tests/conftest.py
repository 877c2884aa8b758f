import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from approachnorm import FiniteSpace, INF
from approachnorm.catalog import get
from approachnorm.space import _min_plus_closure

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ENTRY_VALUES = [0, 1, 2, 3, 5, Fraction(1, 2), Fraction(7, 3), INF]


@st.composite
def spaces(draw, min_size=1, max_size=5, values=ENTRY_VALUES):
    """Random finite quasi-metric spaces, triangle inequality forced by path closure."""
    n = draw(st.integers(min_size, max_size))
    raw = [[0 if i == j else draw(st.sampled_from(values)) for j in range(n)] for i in range(n)]
    return FiniteSpace(tuple(f"p{i}" for i in range(n)), _min_plus_closure(raw))


@st.composite
def metric_spaces(draw, min_size=1, max_size=5):
    n = draw(st.integers(min_size, max_size))
    raw = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            raw[i][j] = raw[j][i] = draw(st.integers(1, 9))
    return FiniteSpace(tuple(f"p{i}" for i in range(n)), _min_plus_closure(raw))


def subsets(s, nonempty=True):
    return st.sets(st.sampled_from(s.points), min_size=1 if nonempty else 0)


def grid_values(s, top):
    return st.sampled_from(sorted({0, top} | {v for r in s.q for v in r if v is not INF and v <= top}))


@pytest.fixture
def e3():
    return get("exInorm").space


@pytest.fixture
def e4():
    return get("exVO").space


@pytest.fixture
def line():
    # a --5-- b --5-- c, symmetric
    return FiniteSpace.from_pairs(
        "abc",
        {("a", "b"): 5, ("b", "a"): 5, ("b", "c"): 5, ("c", "b"): 5, ("a", "c"): 10, ("c", "a"): 10},
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
