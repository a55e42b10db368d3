from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings

from fallcolor.constructions import fixture_colorings
from fallcolor.engine import (
    CapacityError,
    Coloring,
    FallReport,
    NoFallColoringError,
    Undecided,
    chi_f,
    chromatic_number,
    fall_defects,
    fall_set,
    find_fall_coloring,
    first_member,
    is_colorful,
    is_fall,
    is_proper,
    min_class_size,
    psi_f,
    search_order,
)
from fallcolor.graph import (
    cat_product,
    complete,
    cycle,
    disjoint_union,
    empty,
    lex_product,
    mycielskian,
    path,
)
from oracles import graphs, oracle_chromatic, oracle_fall_set, random_graph


class TestColoring:
    def test_requires_surjective(self):
        with pytest.raises(ValueError):
            Coloring((0, 2))

    def test_rejects_negative_and_empty(self):
        with pytest.raises(ValueError):
            Coloring((-1, 0))
        with pytest.raises(ValueError):
            Coloring(())

    def test_parse_and_print(self):
        f = Coloring.parse("1 2 1 3", one_based=True)
        assert f.colors == (0, 1, 0, 2) and f.k == 3
        assert f.to_line() == "0 1 0 2"
        assert f.to_line(one_based=True) == "1 2 1 3"

    def test_from_classes(self):
        f = Coloring.from_classes(4, [[0, 2], [1], [3]])
        assert f.colors == (0, 1, 0, 2)
        with pytest.raises(ValueError):
            Coloring.from_classes(3, [[0, 1], [1, 2]])
        with pytest.raises(ValueError):
            Coloring.from_classes(3, [[0, 1]])


class TestVerification:
    def test_proper(self):
        assert is_proper(complete(3), [0, 1, 2])
        assert not is_proper(complete(2), [0, 0])
        assert is_proper(cycle(5), [0, 1, 0, 1, 2])

    def test_colorful(self):
        f = [0, 1, 0, 1, 2]
        assert is_colorful(cycle(5), f, 4)
        assert not is_colorful(cycle(5), f, 1)
        assert all(is_colorful(complete(4), [0, 1, 2, 3], v) for v in range(4))

    def test_colorful_out_of_range(self):
        with pytest.raises(ValueError):
            is_colorful(cycle(5), [0, 1, 0, 1, 2], 5)

    def test_length_mismatch(self):
        for fn in (is_proper, is_fall):
            with pytest.raises(ValueError):
                fn(cycle(5), [0, 1])

    def test_fixtures_are_fall(self):
        for name, g, f in fixture_colorings():
            assert is_fall(g, f) and f.k == 5, name

    def test_fall_needs_every_color(self):
        assert not is_fall(complete(2), [0, 2])

    def test_defects(self):
        d = fall_defects(cycle(5), [0, 1, 0, 1, 2])
        assert d["proper"] and not d["fall"] and d["k"] == 3
        assert d["offending_vertices"] == [1, 2]
        d = fall_defects(complete(2), [0, 0])
        assert not d["proper"] and d["monochromatic_edges"] == [[0, 1]]


class TestChromatic:
    @pytest.mark.parametrize("g,chi", [(cycle(5), 3), (complete(5), 5), (mycielskian(complete(2)), 3),
                                       (empty(4), 1), (mycielskian(cycle(5)), 4)])
    def test_examples(self, g, chi):
        assert chromatic_number(g) == chi

    def test_capacity(self):
        with pytest.raises(CapacityError):
            chromatic_number(cycle(10), capacity=8)

    def test_against_oracle(self):
        rng = random.Random(7)
        for _ in range(60):
            g = random_graph(rng, rng.randint(1, 7), rng.random())
            assert chromatic_number(g) == oracle_chromatic(g)


class TestFindFallColoring:
    def test_c5(self):
        assert find_fall_coloring(cycle(5), 3) is None

    def test_k4(self):
        assert find_fall_coloring(complete(4), 4).colors == (0, 1, 2, 3)

    def test_k3_x_k4(self):
        f = find_fall_coloring(cat_product(complete(3), complete(4)), 3)
        assert f is not None and is_fall(cat_product(complete(3), complete(4)), f)

    def test_k_above_min_degree_plus_one(self):
        assert find_fall_coloring(path(5), 3) is None

    def test_rejects_nonpositive_k(self):
        with pytest.raises(ValueError):
            find_fall_coloring(cycle(6), 0)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            find_fall_coloring(cycle(10), 2, capacity=9)

    def test_timeout_is_undecided_not_absent(self):
        g = cat_product(cat_product(complete(2), complete(3)), complete(4))
        with pytest.raises(Undecided):
            find_fall_coloring(g, 6, timeout=1e-9)

    def test_witness_is_lexicographically_first(self):
        g = cycle(6)
        f = find_fall_coloring(g, 2)
        order = search_order(g)
        assert [f[v] for v in order][0] == 0


class TestFallSet:
    def test_c5_empty(self):
        r = fall_set(cycle(5))
        assert r.fall_set == () and r.chi_f is None and r.psi_f is None

    def test_k2_x_k3(self):
        assert fall_set(cat_product(complete(2), complete(3))).fall_set == (2, 3)

    def test_union_c6_c8(self):
        r = fall_set(disjoint_union([cycle(6), cycle(8)]))
        assert r.fall_set == (2,)
        assert is_fall(disjoint_union([cycle(6), cycle(8)]), r.witnesses[2])

    def test_known_cycles(self):
        assert fall_set(cycle(6)).fall_set == (2, 3)
        assert fall_set(cycle(8)).fall_set == (2,)
        assert fall_set(cycle(9)).fall_set == (3,)

    def test_isolated_vertex_plus_edge(self):
        assert fall_set(disjoint_union([complete(2), complete(1)])).fall_set == ()

    def test_empty_graph(self):
        assert fall_set(empty(3)).fall_set == (1,)

    def test_ks_restriction(self):
        assert fall_set(cycle(6), ks=[3]).fall_set == (3,)

    def test_json_is_stable(self):
        r = fall_set(cycle(6))
        doc = json.loads(r.to_json())
        assert list(doc) == sorted(doc)
        assert doc["fall_set"] == [2, 3] and doc["witnesses"]["3"] == [0, 1, 2, 0, 1, 2]
        assert json.loads(r.to_json(one_based=True))["witnesses"]["2"] == [1, 2, 1, 2, 1, 2]

    def test_report_validation(self):
        with pytest.raises(ValueError):
            FallReport((3, 2))
        with pytest.raises(ValueError):
            FallReport((2,), {})
        with pytest.raises(ValueError):
            FallReport((2,), {2: Coloring((0, 1, 2))})


class TestChiPsi:
    def test_examples(self):
        assert chi_f(cycle(9)) == 3
        assert psi_f(cycle(8)) == 2
        assert chi_f(complete(2)) == psi_f(complete(2)) == 2

    def test_no_fall(self):
        with pytest.raises(NoFallColoringError):
            chi_f(cycle(5))
        with pytest.raises(NoFallColoringError):
            psi_f(cycle(5))

    def test_first_member_order(self):
        assert first_member(cycle(6), [3, 2])[0] == 3


def test_solver_matches_partition_oracle():
    rng = random.Random(2024)
    for _ in range(250):
        g = random_graph(rng, rng.randint(1, 8), rng.choice([0.3, 0.5, 0.7]))
        r = fall_set(g)
        assert set(r.fall_set) == oracle_fall_set(g), g.edges()
        assert all(is_fall(g, r.witnesses[k]) and r.witnesses[k].k == k for k in r.fall_set)


def test_fall_range_bound_by_oracle():
    """Every member of Fall lies in [chi, mindeg + 1], checked without the solver."""
    rng = random.Random(99)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        members = oracle_fall_set(g)
        if members:
            assert oracle_chromatic(g) <= min(members)
            assert max(members) <= g.min_degree + 1


def test_min_class_size_is_independent_domination():
    rng = random.Random(3)
    for _ in range(80):
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        best = min(
            bin(s).count("1")
            for s in range(1, 1 << g.n)
            if all(not (g.adj[v] & s) for v in range(g.n) if s >> v & 1)
            and all((g.closed(v) & s) for v in range(g.n))
        )
        assert min_class_size(g) == best


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=4), graphs(max_n=4), graphs(max_n=4))
def test_union_law(a, b, c):
    parts = [a, b, c]
    expected = set(fall_set(a).fall_set) & set(fall_set(b).fall_set) & set(fall_set(c).fall_set)
    assert set(fall_set(disjoint_union(parts)).fall_set) == expected


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=5))
def test_mycielskian_has_no_fall_coloring(g):
    assert fall_set(mycielskian(g)).fall_set == ()


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=3), graphs(max_n=3))
def test_layers_of_lex_witnesses_are_fall(g, h):
    from fallcolor.constructions import layer_color_sets

    prod = lex_product(g, h)
    for k, f in fall_set(prod).witnesses.items():
        layers = layer_color_sets(g, h, f)
        assert set().union(*layers.values()) == set(range(k))


def test_graph_is_shareable_across_threads():
    from concurrent.futures import ThreadPoolExecutor

    g = cat_product(complete(3), complete(4))
    with ThreadPoolExecutor(4) as pool:
        results = list(pool.map(lambda k: find_fall_coloring(g, k), [2, 3, 4, 5]))
    assert [r is not None for r in results] == [False, True, True, False]


def test_timeout_lands_in_undecided():
    g = cat_product(cat_product(complete(2), complete(3)), complete(4))
    r = fall_set(g, timeout=1e-9, ks=[6])
    assert r.fall_set == () and r.undecided == (6,) and not r.decided
