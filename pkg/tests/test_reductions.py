from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from fallcolor.engine import Undecided, chromatic_number, fall_set, is_fall
from fallcolor.graph import Graph, complement, complete, cycle, disjoint_union, empty, path
from fallcolor.reductions import (
    Bipartition,
    Matching,
    NotBipartiteError,
    NotRegularError,
    bipartition,
    complement_matching,
    fall_of_bipartite_complement,
    fall_via_ghat,
    ghat_count,
    ghat_family,
    max_matching_bipartite,
    odd_cycle,
    regular_d2_criterion,
)
from oracles import graphs, random_graph


class TestGhat:
    def test_t1_is_g(self):
        g = cycle(7)
        assert list(ghat_family(g, 1)) == [g]

    def test_c4_t2(self):
        assert ghat_count(cycle(4), 2) == 16
        assert list(ghat_family(cycle(4), 2)) == [cycle(4)]

    def test_c4_t3(self):
        assert list(ghat_family(cycle(4), 3)) == [complete(4)]

    def test_t_out_of_range(self):
        with pytest.raises(ValueError):
            list(ghat_family(cycle(4), 4))
        with pytest.raises(ValueError):
            fall_via_ghat(cycle(4), 0)

    @pytest.mark.parametrize("g,t,expected", [(cycle(4), 3, False), (cycle(6), 3, True), (cycle(5), 3, False)])
    def test_examples(self, g, t, expected):
        assert fall_via_ghat(g, t) is expected
        assert (t in fall_set(g).fall_set) is expected

    def test_budget_gives_undecided(self):
        with pytest.raises(Undecided):
            fall_via_ghat(complete(6), 3, budget=10)

    def test_members_contain_g(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
        for h in ghat_family(g, 3):
            assert all(h.adj[v] & g.adj[v] == g.adj[v] for v in range(g.n))


class TestRegular:
    def test_examples(self):
        assert regular_d2_criterion(cycle(5)) is False
        assert regular_d2_criterion(cycle(6)) is True
        assert regular_d2_criterion(complete(4)) is True

    def test_non_regular(self):
        with pytest.raises(NotRegularError) as info:
            regular_d2_criterion(path(4))
        assert (info.value.low, info.value.high) == (1, 2)


class TestBipartition:
    def test_c6(self):
        b = bipartition(cycle(6))
        assert b == Bipartition(frozenset({0, 2, 4}), frozenset({1, 3, 5}))

    def test_c5(self):
        assert bipartition(cycle(5)) is None
        cyc = odd_cycle(cycle(5))
        assert len(cyc) == 5
        assert all(cycle(5).has_edge(cyc[i], cyc[(i + 1) % 5]) for i in range(5))

    def test_isolated_on_a_side(self):
        b = bipartition(empty(3))
        assert b.a == frozenset({0, 1, 2}) and not b.b

    def test_validate(self):
        with pytest.raises(ValueError):
            Bipartition(frozenset({0, 1}), frozenset({2})).validate(path(3))


class TestMatching:
    def test_p4(self):
        m = max_matching_bipartite(path(4), bipartition(path(4)))
        assert len(m) == 2 and m.pairs == ((0, 1), (2, 3))

    def test_p3(self):
        assert len(max_matching_bipartite(path(3), bipartition(path(3)))) == 1

    def test_c6(self):
        m = max_matching_bipartite(cycle(6), bipartition(cycle(6)))
        assert len(m) == 3
        m.validate(cycle(6))

    def test_disjointness(self):
        with pytest.raises(ValueError):
            Matching(((0, 1), (1, 2)))

    def test_invalid_bipartition(self):
        with pytest.raises(ValueError):
            max_matching_bipartite(path(3), Bipartition(frozenset({0, 1}), frozenset({2})))

    def test_size_against_brute_force(self):
        rng = random.Random(8)
        for _ in range(120):
            n = rng.randint(2, 10)
            half = rng.randint(1, n - 1)
            edges = [(u, v) for u in range(half) for v in range(half, n) if rng.random() < 0.35]
            g = Graph.from_edges(n, edges)
            got = len(max_matching_bipartite(g, bipartition(g)))
            assert got == brute_matching(edges)


def brute_matching(edges) -> int:
    best = 0
    for r in range(len(edges), 0, -1):
        if r <= best:
            break
        for pick in combinations(edges, r):
            flat = [v for e in pick for v in e]
            if len(flat) == len(set(flat)):
                return r
    return best


class TestBipartiteComplement:
    def test_p4(self):
        r = fall_of_bipartite_complement(path(4))
        assert r.fall_set == (2,)
        assert is_fall(complement(path(4)), r.witnesses[2])
        assert fall_set(complement(path(4))).fall_set == (2,)

    def test_p3(self):
        assert fall_of_bipartite_complement(path(3)).fall_set == ()

    def test_k2(self):
        assert fall_of_bipartite_complement(complete(2)).fall_set == (1,)

    def test_isolated_vertices_get_own_class(self):
        g = disjoint_union([path(4), empty(2)])
        r = fall_of_bipartite_complement(g)
        assert r.fall_set == (4,) and is_fall(complement(g), r.witnesses[4])

    def test_rejects_odd_cycle(self):
        with pytest.raises(NotBipartiteError) as info:
            fall_of_bipartite_complement(cycle(5))
        assert len(info.value.cycle) == 5

    def test_complement_matching_none(self):
        assert complement_matching(path(3)) is None


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_bipartite_complement_equals_chromatic(g):
    if bipartition(g) is None:
        return
    r = fall_of_bipartite_complement(g)
    assert r.fall_set == fall_set(complement(g)).fall_set
    if r.fall_set:
        assert r.fall_set == (chromatic_number(complement(g)),)


def test_ghat_agrees_with_solver_on_random_graphs():
    rng = random.Random(21)
    for _ in range(80):
        g = random_graph(rng, rng.randint(1, 7), rng.choice([0.4, 0.6, 0.8]))
        members = set(fall_set(g).fall_set)
        for t in range(1, g.min_degree + 2):
            if ghat_count(g, t) <= 2000:
                assert fall_via_ghat(g, t) == (t in members)
