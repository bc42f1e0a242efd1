import random

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from kayles import generators
from kayles.graph import Graph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def connected_graphs(draw, min_n=1, max_n=8, max_extra=4):
    n = draw(st.integers(min_n, max_n))
    extra = draw(st.integers(0, min(max_extra, n * (n - 1) // 2 - (n - 1))))
    seed = draw(st.integers(0, 2**32 - 1))
    return generators.random_connected(n, n - 1 + extra, seed)


@st.composite
def trees(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    return Graph.from_edges(n, [(p, v) for v, p in enumerate(parents, start=1)])


@st.composite
def fen_graphs(draw, max_n=12, max_fen=3):
    fen = draw(st.integers(1, max_fen))
    lo = 3 if fen == 1 else 4 if fen <= 3 else 5
    n = draw(st.integers(lo, max_n))
    return generators.random_with_fen(draw(st.integers(0, 2**32 - 1)), n, fen)


@st.composite
def alive_subsets(draw, g: Graph):
    return draw(st.integers(0, g.full))


def rng(seed=0):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
