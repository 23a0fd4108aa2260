import pytest
from hypothesis import strategies as st

from slopecrystal.core import MultiPartition

ACCEPTANCE_LINES: list[str] = []


@st.composite
def partitions(draw, max_size=10):
    m = draw(st.integers(min_value=0, max_value=max_size))
    parts = []
    remaining = m
    cap = m
    while remaining:
        p = draw(st.integers(min_value=1, max_value=min(cap, remaining)))
        parts.append(p)
        remaining -= p
        cap = p
    return tuple(parts)


@st.composite
def multipartitions(draw, n=None, ell=None, max_size=8):
    n = n or draw(st.integers(min_value=2, max_value=5))
    ell = ell or draw(st.integers(min_value=1, max_value=3))
    coloring = tuple(draw(st.integers(min_value=0, max_value=n - 1)) for _ in range(ell))
    parts = tuple(draw(partitions(max_size=max_size // ell)) for _ in range(ell))
    return MultiPartition(n, coloring, parts)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def four_component_example():
    return MultiPartition(3, (0, 1, 1, 2), ((3, 2), (2, 1), (2, 2), (2,)))
