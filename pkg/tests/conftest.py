import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mixedsearch.corpus import graphs, sun3_decomposition
from mixedsearch.decomposition import fullify
from mixedsearch.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

LETTERS = "abcdefg"


@st.composite
def small_graphs(draw, min_vertices=2, max_vertices=5, connected=True):
    """Random graphs on the first few letters; a spanning tree is drawn first when ``connected``."""
    n = draw(st.integers(min_vertices, max_vertices))
    vs = list(LETTERS[:n])
    es = set()
    if connected:
        for i in range(1, n):
            j = draw(st.integers(0, i - 1))
            es.add((vs[j], vs[i]))
    pairs = list(itertools.combinations(vs, 2))
    extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs)))
    es.update(extra)
    if not es:
        es.add((vs[0], vs[1]))
    return Graph(vs, sorted(es))


@pytest.fixture(scope="session")
def corpus():
    return graphs()


@pytest.fixture(scope="session")
def sun3_ltd():
    return sun3_decomposition()


@pytest.fixture(scope="session")
def sun3_full(sun3_ltd):
    return fullify(sun3_ltd)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
