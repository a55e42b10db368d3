from __future__ import annotations

import random

import pytest

from fallcolor.corpus import (
    IsoSet,
    all_graphs,
    bipartite_graphs,
    connected_graphs,
    is_bipartite,
    isomorphic,
    labeled_graphs,
    regular_graphs,
    unique,
)
from fallcolor.graph import Graph, cycle, is_connected, path
from oracles import random_graph

# graph counts up to isomorphism: OEIS A000088, A001349, A033995
ALL = [1, 2, 4, 11, 34, 156]
CONNECTED = [1, 1, 2, 6, 21, 112]
BIPARTITE = [1, 2, 3, 7, 13, 35, 88]


@pytest.mark.parametrize("n", range(1, 7))
def test_all_graph_counts(n):
    assert len(all_graphs(n)) == ALL[n - 1]


def test_connected_counts():
    got = [len(connected_graphs(n, n)) for n in range(1, 7)]
    assert got == CONNECTED
    assert all(is_connected(g) for g in connected_graphs(6))


def test_bipartite_counts():
    assert [len(bipartite_graphs(n)) for n in range(1, 8)] == BIPARTITE
    assert all(is_bipartite(g) for g in bipartite_graphs(6))


def test_regular_counts_on_eight():
    assert {r: len(regular_graphs(8, r)) for r in range(2, 8)} == {2: 1, 3: 5, 4: 6, 5: 3, 6: 1, 7: 1}
    assert regular_graphs(5, 3) == []


def test_labeled_count():
    assert sum(1 for _ in labeled_graphs(4)) == 64


def test_isomorphic_detects_relabelling():
    rng = random.Random(4)
    for _ in range(50):
        g = random_graph(rng, rng.randint(1, 8))
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert isomorphic(g, g.relabel(perm))


def test_isomorphic_separates():
    assert not isomorphic(cycle(6), path(6))
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    # same degree sequence, not isomorphic
    assert not isomorphic(cycle(6), two_triangles)


def test_isoset_and_unique():
    s = IsoSet()
    assert s.add(cycle(5)) and not s.add(cycle(5).relabel([4, 3, 2, 1, 0])) and len(s) == 1
    assert len(unique(labeled_graphs(4))) == 11
