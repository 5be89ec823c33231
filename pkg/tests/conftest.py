import pytest

from swlink.plumbing import PlumbingGraph


@pytest.fixture
def e8_graph():
    """Chain 1-...-7 with vertex 8 hanging off vertex 5, all Euler -2."""
    vs = tuple((i, -2) for i in range(1, 9))
    es = tuple((i, i + 1) for i in range(1, 7)) + ((5, 8),)
    return PlumbingGraph(vs, es)


@pytest.fixture
def cusp_graph():
    """Minimal embedded resolution of the (2,3) cusp with the knot arrow."""
    return PlumbingGraph(((0, -1), (1, -2), (2, -3)), ((0, 1), (0, 2)),
                         ((0, "f"),))
