"""Independent brute-force oracles and hypothesis strategies shared by the tests."""

from __future__ import annotations

import random
from itertools import combinations

from hypothesis import strategies as st

from fallcolor.graph import Graph


def partitions(items):
    """Every set partition of ``items`` (restricted-growth order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def oracle_fall_set(g: Graph) -> set[int]:
    """Fall(g) from first principles: partitions into independent dominating sets."""
    out = set()
    for part in partitions(range(g.n)):
        ok = True
        for cls in part:
            if any(g.has_edge(u, v) for u, v in combinations(cls, 2)):
                ok = False
                break
            if any(v not in cls and not any(g.has_edge(v, u) for u in cls) for v in range(g.n)):
                ok = False
                break
        if ok:
            out.add(len(part))
    return out


def oracle_chromatic(g: Graph) -> int:
    for k in range(1, g.n + 1):
        for part in partitions(range(g.n)):
            if len(part) == k and all(
                not g.has_edge(u, v) for cls in part for u, v in combinations(cls, 2)
            ):
                return k
    raise AssertionError("unreachable")


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])
