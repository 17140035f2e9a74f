import pytest
from hypothesis import settings, strategies as st

from hspeed.graph import Graph, from_edges

settings.register_profile("default", deadline=None, derandomize=True, max_examples=150)
settings.load_profile("default")

_ACCEPTANCE: list[str] = []


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    mask = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1)) if n > 1 else 0
    return Graph.from_pair_mask(n, mask)


@st.composite
def bipartitions(draw, max_side=5):
    from hspeed.graph import Bipartition

    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    mask = draw(st.integers(0, (1 << (a * b)) - 1))
    edges = [(i, a + j) for i in range(a) for j in range(b) if mask >> (i * b + j) & 1]
    return Bipartition(from_edges(a + b, edges), tuple(range(a)), tuple(range(a, a + b)))


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""
    def record(number, title, passed, detail=""):
        line = f"acceptance {number:>2} {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        _ACCEPTANCE.append(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
