import pytest

from hikes.graph import Digraph
from hikes.multiset import EdgeMultiset


def cycle(*vs):
    """Simple cycle through vs in order, closing back to vs[0]."""
    vs = list(vs)
    return EdgeMultiset.from_edges(zip(vs, vs[1:] + vs[:1]))


def path(*vs):
    return EdgeMultiset.from_edges(zip(vs, vs[1:]))


@pytest.fixture
def two_cycles():
    # a 4-cycle and a disjoint 3-cycle
    return Digraph.from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 1), (5, 6), (6, 7), (7, 5)])


@pytest.fixture
def bowtie():
    # two triangles sharing vertex 2
    return Digraph.from_edges(5, [(1, 2), (2, 3), (3, 1), (2, 4), (4, 5), (5, 2)])


@pytest.fixture
def dense3():
    return Digraph.from_edges(3, [(i, j) for i in range(1, 4) for j in range(1, 4)])
