"""Decision procedures that avoid (or replace) the direct fall-coloring search.

* :func:`fall_via_ghat` decides t in Fall(G) through chromatic numbers of the
  graphs obtained by turning, for every vertex, t-1 of its neighbours into a
  clique.
* :func:`regular_d2_criterion` is the r-regular special case t = r + 1, which
  reduces to the chromatic number of the distance-2 power.
* :func:`fall_of_bipartite_complement` settles Fall of the complement of a
  bipartite graph with one maximum-matching computation.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .engine import DEFAULT_CAPACITY, Coloring, FallReport, Undecided, chromatic_number, is_fall
from .graph import Graph, bits, complement, distance2_power

DEFAULT_GHAT_BUDGET = 10_000


class NotBipartiteError(ValueError):
    def __init__(self, cycle: list[int]):
        super().__init__(f"graph has an odd cycle of length {len(cycle)}: {cycle}")
        self.cycle = cycle


class NotRegularError(ValueError):
    def __init__(self, low: int, high: int):
        super().__init__(f"graph is not regular: degrees range from {low} to {high}")
        self.low = low
        self.high = high


# -- the G-hat_t family -------------------------------------------------------

def _check_t(g: Graph, t: int) -> None:
    if not 1 <= t <= g.min_degree + 1:
        raise ValueError(f"t must lie in 1..{g.min_degree + 1}, got {t}")


def ghat_count(g: Graph, t: int) -> int:
    """Number of per-vertex choice tuples (an upper bound on the family size)."""
    _check_t(g, t)
    return math.prod(math.comb(g.degree(v), t - 1) for v in range(g.n))


def ghat_family(g: Graph, t: int) -> Iterator[Graph]:
    """Lazily yield the distinct graphs of the family, in choice order."""
    _check_t(g, t)
    per_vertex = [list(combinations(g.neighbors(v), t - 1)) for v in range(g.n)]
    seen = set()
    for choice in product(*per_vertex):
        rows = list(g.adj)
        for chosen in choice:
            mask = 0
            for u in chosen:
                mask |= 1 << u
            for u in chosen:
                rows[u] |= mask & ~(1 << u)
        key = tuple(rows)
        if key in seen:
            continue
        seen.add(key)
        yield Graph(g.n, key)


def fall_via_ghat(
    g: Graph,
    t: int,
    budget: int = DEFAULT_GHAT_BUDGET,
    capacity: int = DEFAULT_CAPACITY,
) -> bool:
    """True iff some member of the family has chromatic number exactly t.

    Raises :class:`Undecided` when the number of choice tuples exceeds
    ``budget``.
    """
    count = ghat_count(g, t)
    if count > budget:
        raise Undecided(f"family has {count} choice tuples, over the budget of {budget}", t)
    for h in ghat_family(g, t):
        if chromatic_number(h, capacity) == t:
            return True
    return False


def regular_degree(g: Graph) -> int:
    degs = g.degrees()
    if min(degs) != max(degs):
        raise NotRegularError(min(degs), max(degs))
    return degs[0]


def regular_d2_criterion(g: Graph, capacity: int = DEFAULT_CAPACITY) -> bool:
    """For r-regular g: whether chi(G^(2)) == r + 1, i.e. r + 1 is in Fall(g)."""
    r = regular_degree(g)
    return chromatic_number(distance2_power(g), capacity) == r + 1


# -- bipartite complements ------------------------------------------------------

@dataclass(frozen=True)
class Bipartition:
    a: frozenset[int]
    b: frozenset[int]

    def validate(self, g: Graph) -> None:
        if self.a & self.b or (self.a | self.b) != set(range(g.n)):
            raise ValueError("sides must partition the vertex set")
        for side in (self.a, self.b):
            for v in side:
                if any(u in side for u in bits(g.adj[v])):
                    raise ValueError(f"edge inside one side at vertex {v}")


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        flat = [v for p in pairs for v in p]
        if len(flat) != len(set(flat)):
            raise ValueError("matching pairs must be vertex-disjoint")

    def __len__(self) -> int:
        return len(self.pairs)

    def covered(self) -> frozenset[int]:
        return frozenset(v for p in self.pairs for v in p)

    def validate(self, g: Graph) -> None:
        for u, v in self.pairs:
            if not g.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge")


def _two_color(g: Graph) -> tuple[list[int], list[int] | None]:
    """BFS 2-coloring; on failure also returns an odd cycle."""
    side = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in bits(g.adj[v]):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    parent[u] = v
                    queue.append(u)
                elif side[u] == side[v]:
                    return side, _odd_cycle(parent, u, v)
    return side, None


def _odd_cycle(parent: list[int], u: int, v: int) -> list[int]:
    """Close the BFS-tree paths from u and v at their lowest common ancestor."""
    path_u = [u]
    while parent[path_u[-1]] >= 0:
        path_u.append(parent[path_u[-1]])
    path_v = [v]
    while parent[path_v[-1]] >= 0:
        path_v.append(parent[path_v[-1]])
    on_u = {x: i for i, x in enumerate(path_u)}
    for j, x in enumerate(path_v):
        if x in on_u:
            return path_u[: on_u[x] + 1] + path_v[:j][::-1]
    raise AssertionError("BFS paths share no ancestor")


def bipartition(g: Graph) -> Bipartition | None:
    """Sides of a 2-coloring (each component's smallest vertex on side A), or None."""
    side, cycle = _two_color(g)
    if cycle is not None:
        return None
    return Bipartition(frozenset(v for v in range(g.n) if side[v] == 0),
                       frozenset(v for v in range(g.n) if side[v] == 1))


def odd_cycle(g: Graph) -> list[int] | None:
    return _two_color(g)[1]


def _augment(g: Graph, a: int, mate: list[int], visited: set[int]) -> bool:
    for b in bits(g.adj[a]):
        if b in visited:
            continue
        visited.add(b)
        if mate[b] < 0 or _augment(g, mate[b], mate, visited):
            mate[b] = a
            mate[a] = b
            return True
    return False


def max_matching_bipartite(g: Graph, b: Bipartition) -> Matching:
    """Maximum matching by augmenting paths from the A side, in vertex order."""
    b.validate(g)
    mate = [-1] * g.n
    for a in sorted(b.a):
        if mate[a] < 0:
            _augment(g, a, mate, set())
    # one more sweep must find nothing: the matching is maximum
    for a in sorted(b.a):
        if mate[a] < 0:
            assert not _augment(g, a, list(mate), set()), "augmenting path left after matching"
    return Matching(tuple((a, mate[a]) for a in sorted(b.a) if mate[a] >= 0))


def complement_matching(g: Graph) -> Matching | None:
    """A perfect matching of g on its non-isolated vertices, if there is one."""
    side, cycle = _two_color(g)
    if cycle is not None:
        raise NotBipartiteError(cycle)
    bp = Bipartition(frozenset(v for v in range(g.n) if side[v] == 0),
                     frozenset(v for v in range(g.n) if side[v] == 1))
    matching = max_matching_bipartite(g, bp)
    active = sum(1 for v in range(g.n) if g.adj[v])
    return matching if 2 * len(matching) == active else None


def fall_of_bipartite_complement(g: Graph) -> FallReport:
    """Fall of complement(g) for bipartite g, decided by a maximum matching.

    The only possible fall coloring classes are matching edges of g and its
    isolated vertices, so Fall is {n - |active|/2} when g has a perfect
    matching on its non-isolated vertices and empty otherwise.
    """
    matching = complement_matching(g)
    if matching is None:
        return FallReport(())
    gc = complement(g)
    classes = [[v] for v in range(g.n) if not g.adj[v]] + [list(p) for p in matching.pairs]
    classes.sort(key=min)
    witness = Coloring.from_classes(g.n, classes)
    if not is_fall(gc, witness):
        raise AssertionError("matching-derived coloring is not fall on the complement")
    return FallReport((witness.k,), {witness.k: witness})
