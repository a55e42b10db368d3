"""Small-graph corpora for exhaustive checks and the conjecture hunter.

Graphs are generated up to isomorphism.  Candidates are bucketed by a
colour-refinement fingerprint and compared exactly inside a bucket with a
refinement-constrained backtracking matcher, which is plenty at n <= 8.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterable, Iterator

from .graph import Graph, bits, is_connected
from .reductions import bipartition


def _refine(g: Graph) -> list[int]:
    colors = [g.degree(v) for v in range(g.n)]
    classes = len(set(colors))
    for _ in range(g.n):
        colors = [hash((colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v]))))) for v in range(g.n)]
        now = len(set(colors))
        if now == classes:
            break
        classes = now
    return colors


def fingerprint(g: Graph) -> tuple:
    return (g.n, g.num_edges, tuple(sorted(_refine(g))))


def isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    cg, ch = _refine(g), _refine(h)
    if sorted(cg) != sorted(ch):
        return False
    order = sorted(range(g.n), key=lambda v: (cg.count(cg[v]), -g.degree(v)))
    image = [-1] * g.n
    used = 0

    def rec(i: int) -> bool:
        nonlocal used
        if i == g.n:
            return True
        v = order[i]
        for w in range(h.n):
            if used >> w & 1 or ch[w] != cg[v]:
                continue
            if all(g.has_edge(v, u) == h.has_edge(w, image[u]) for u in order[:i]):
                image[v] = w
                used |= 1 << w
                if rec(i + 1):
                    return True
                used &= ~(1 << w)
        image[v] = -1
        return False

    return rec(0)


class IsoSet:
    """Keeps the first representative of every isomorphism class added."""

    def __init__(self):
        self._buckets: dict[tuple, list[Graph]] = {}
        self.items: list[Graph] = []

    def add(self, g: Graph) -> bool:
        bucket = self._buckets.setdefault(fingerprint(g), [])
        if any(isomorphic(g, h) for h in bucket):
            return False
        bucket.append(g)
        self.items.append(g)
        return True

    def __len__(self) -> int:
        return len(self.items)


def unique(graphs: Iterable[Graph]) -> list[Graph]:
    out = IsoSet()
    for g in graphs:
        out.add(g)
    return out.items


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, (0,)),)
    seen = IsoSet()
    for base in _all_graphs(n - 1):
        new = n - 1
        for nbrs in range(1 << (n - 1)):
            rows = [row | ((nbrs >> v & 1) << new) for v, row in enumerate(base.adj)]
            rows.append(nbrs)
            seen.add(Graph(n, tuple(rows)))
    return tuple(seen.items)


def all_graphs(n: int) -> list[Graph]:
    """One representative of every graph on exactly n vertices (n <= 7 is quick)."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(_all_graphs(n))


def connected_graphs(max_n: int, min_n: int = 1) -> list[Graph]:
    return [g for n in range(min_n, max_n + 1) for g in _all_graphs(n) if is_connected(g)]


def regular_graphs(n: int, r: int, connected: bool = True) -> list[Graph]:
    """r-regular graphs on n vertices up to isomorphism.

    Vertex 0 is fixed adjacent to 1..r (every class has such a labelling),
    then remaining edges are chosen pair by pair under the degree cap.
    """
    if r < 0 or r >= n or (n * r) % 2:
        return []
    pairs = [(u, v) for u, v in combinations(range(1, n), 2)]
    deg = [0] * n
    rows = [0] * n
    for u in range(1, r + 1):
        rows[0] |= 1 << u
        rows[u] |= 1
        deg[u] = 1
    deg[0] = r
    found = IsoSet()

    def rec(i: int) -> None:
        if all(d == r for d in deg):
            g = Graph(n, tuple(rows))
            if not connected or is_connected(g):
                found.add(g)
            return
        if i == len(pairs):
            return
        u, v = pairs[i]
        # every vertex below u must already be full once we pass it
        if any(deg[w] != r for w in range(u)):
            return
        if deg[u] < r and deg[v] < r:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            deg[u] += 1
            deg[v] += 1
            rec(i + 1)
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            deg[u] -= 1
            deg[v] -= 1
        rec(i + 1)

    rec(0)
    return found.items


def _bipartite_canon(a: int, b: int, rows: tuple[int, ...]) -> tuple:
    """Canonical biadjacency form under row and column permutations (small a)."""
    best = None
    for perm in permutations(range(a)):
        cols = sorted(tuple(rows[perm[i]] >> j & 1 for i in range(a)) for j in range(b))
        key = tuple(cols)
        if best is None or key < best:
            best = key
    return best


def bipartite_graphs(n: int) -> list[Graph]:
    """Every bipartite graph on n vertices up to isomorphism (isolated vertices allowed)."""
    found = IsoSet()
    for a in range(0, n // 2 + 1):
        b = n - a
        canon_seen = set()
        # rows may be permuted freely, so only nondecreasing row tuples are needed
        for rows in combinations_with_replacement(range(1 << b), a):
            key = _bipartite_canon(a, b, rows)
            if key in canon_seen:
                continue
            canon_seen.add(key)
            edges = [(i, a + j) for i in range(a) for j in range(b) if rows[i] >> j & 1]
            found.add(Graph.from_edges(n, edges))
    return found.items


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def labeled_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n choose 2) labelled graphs on n vertices."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, (p for i, p in enumerate(pairs) if code >> i & 1))
