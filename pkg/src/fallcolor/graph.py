"""Immutable simple graphs over dense vertex ids, stored as per-vertex bitsets.

Vertex ``v`` of a graph with ``n`` vertices is an integer in ``range(n)``;
``adj[v]`` is an ``int`` whose bit ``u`` is set iff ``u`` and ``v`` are adjacent.
Every constructor returns a new :class:`Graph`; nothing is mutated in place.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must have one entry per vertex")
        if __debug__:
            full = (1 << self.n) - 1
            for v, row in enumerate(self.adj):
                if row & ~full:
                    raise ValueError(f"vertex {v} has a neighbour outside range({self.n})")
                if row >> v & 1:
                    raise ValueError(f"self-loop at vertex {v}")
                for u in bits(row):
                    if not self.adj[u] >> v & 1:
                        raise ValueError(f"asymmetric edge {v}->{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), labels)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def closed(self, v: int) -> int:
        """Bitset of the closed neighbourhood N[v]."""
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    @property
    def min_degree(self) -> int:
        return min(self.degrees())

    @property
    def max_degree(self) -> int:
        return max(self.degrees())

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            lines.append(f'  {v} [label="{self.label(v)}"];')
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class ProductIndexMap:
    """Row-major bijection between factor coordinates and product vertex ids."""

    n1: int
    n2: int

    def pair(self, x: int, y: int) -> int:
        if not (0 <= x < self.n1 and 0 <= y < self.n2):
            raise ValueError(f"coordinate ({x}, {y}) out of range")
        return x * self.n2 + y

    def unpair(self, v: int) -> tuple[int, int]:
        if not 0 <= v < self.n1 * self.n2:
            raise ValueError(f"product vertex {v} out of range")
        return divmod(v, self.n2)


# -- named families ---------------------------------------------------------

FAMILIES = ("path", "cycle", "complete", "empty")


def path(n: int) -> Graph:
    return build_named("path", n)


def cycle(n: int) -> Graph:
    return build_named("cycle", n)


def complete(n: int) -> Graph:
    return build_named("complete", n)


def empty(n: int) -> Graph:
    return build_named("empty", n)


def build_named(family: str, n: int) -> Graph:
    if n < 1:
        raise ValueError(f"{family} needs n >= 1, got {n}")
    if family == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "cycle":
        if n < 3:
            raise ValueError(f"cycle needs n >= 3, got {n}")
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif family == "complete":
        full = (1 << n) - 1
        return Graph(n, tuple(full ^ (1 << v) for v in range(n)))
    elif family == "empty":
        edges = []
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    return Graph.from_edges(n, edges)


# -- derived graphs ---------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)), g.labels)


def _shifted(g: Graph, offset: int) -> list[int]:
    return [row << offset for row in g.adj]


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint copies of ``g`` then ``h`` (shifted by ``g.n``) plus every cross edge."""
    h_all = ((1 << h.n) - 1) << g.n
    g_all = (1 << g.n) - 1
    rows = [row | h_all for row in g.adj] + [row | g_all for row in _shifted(h, g.n)]
    return Graph(g.n + h.n, tuple(rows), _concat_labels([g, h]))


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    if not parts:
        raise ValueError("disjoint_union needs at least one graph")
    rows: list[int] = []
    for part in parts:
        rows.extend(_shifted(part, len(rows)))
    return Graph(len(rows), tuple(rows), _concat_labels(parts))


def _concat_labels(parts: Sequence[Graph]) -> tuple[str, ...] | None:
    if len(parts) == 1:
        return parts[0].labels
    if all(p.labels is None for p in parts):
        return None
    return tuple(f"{i}:{p.label(v)}" for i, p in enumerate(parts) for v in range(p.n))


def _product_labels(g: Graph, h: Graph) -> tuple[str, ...]:
    return tuple(f"({g.label(x)},{h.label(y)})" for x in range(g.n) for y in range(h.n))


def lex_product(g: Graph, h: Graph) -> Graph:
    """G[H]: (x1,y1)~(x2,y2) iff x1~x2 in g, or x1 == x2 and y1~y2 in h."""
    layer = (1 << h.n) - 1
    blocks = []
    for x in range(g.n):
        outer = 0
        for x2 in bits(g.adj[x]):
            outer |= layer << (x2 * h.n)
        blocks.append(outer)
    rows = []
    for x in range(g.n):
        for y in range(h.n):
            rows.append(blocks[x] | (h.adj[y] << (x * h.n)))
    return Graph(g.n * h.n, tuple(rows), _product_labels(g, h))


def cat_product(g: Graph, h: Graph) -> Graph:
    """G x H: (x1,y1)~(x2,y2) iff x1~x2 in g and y1~y2 in h."""
    rows = []
    for x in range(g.n):
        for y in range(h.n):
            row = 0
            for x2 in bits(g.adj[x]):
                row |= h.adj[y] << (x2 * h.n)
            rows.append(row)
    return Graph(g.n * h.n, tuple(rows), _product_labels(g, h))


def mycielskian(g: Graph) -> Graph:
    """M(G) on x_0..x_{n-1}, y_0..y_{n-1}, z (ids i, n+i, 2n)."""
    n = g.n
    z = 2 * n
    edges = list(g.edges())
    for i in range(n):
        for j in bits(g.adj[i]):
            edges.append((n + i, j))
        edges.append((z, n + i))
    labels = tuple([f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)] + ["z"])
    return Graph.from_edges(2 * n + 1, edges, labels)


def distance2_power(g: Graph) -> Graph:
    rows = []
    for v in range(g.n):
        reach = g.adj[v]
        for u in bits(g.adj[v]):
            reach |= g.adj[u]
        rows.append(reach & ~(1 << v))
    return Graph(g.n, tuple(rows), g.labels)


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components as vertex sets, sorted by their smallest vertex."""
    seen = 0
    out = []
    for root in range(g.n):
        if seen >> root & 1:
            continue
        comp = 1 << root
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(frozenset(bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``s``; returns it with the map new id -> original id."""
    keep = tuple(sorted(set(s)))
    if not keep:
        raise ValueError("induced_subgraph needs a nonempty vertex set")
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        rows.append(mask_of(index[u] for u in bits(g.adj[v]) if u in index))
    labels = tuple(g.label(v) for v in keep) if g.labels is not None else None
    return Graph(len(keep), tuple(rows), labels), keep


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in bits(g.adj[v]):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def is_independent(g: Graph, s: int) -> bool:
    return all(not (g.adj[v] & s) for v in bits(s))


def greedy_clique(g: Graph) -> int:
    """Bitset of a clique found greedily by degree; a cheap lower bound on omega."""
    best = 0
    for start in sorted(range(g.n), key=lambda v: -g.degree(v))[: min(g.n, 8)]:
        clique = 1 << start
        cand = g.adj[start]
        while cand:
            v = max(bits(cand), key=lambda u: (g.adj[u] & cand).bit_count())
            clique |= 1 << v
            cand &= g.adj[v]
        if clique.bit_count() > best.bit_count():
            best = clique
    return best


def clique_number(g: Graph) -> int:
    """Exact omega(g) by simple branch and bound."""
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = cand.bit_length() - 1
            cand ^= 1 << v
            expand(size + 1, cand & g.adj[v])

    expand(0, (1 << g.n) - 1)
    return best
