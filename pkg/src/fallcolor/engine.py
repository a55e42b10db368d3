"""Fall-coloring verification and exact search.

A fall k-coloring is a proper coloring with exactly k colors in which every
vertex sees all k colors on its closed neighbourhood.  Equivalently, every
color class is a maximal independent set; the search below leans on that
to bound how many classes can fit in the graph.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph, bits, connected_components, greedy_clique, induced_subgraph

DEFAULT_CAPACITY = 64
ENGINE_MAX = 4096


class CapacityError(ValueError):
    """The graph is larger than the configured solver bound."""


class NoFallColoringError(ValueError):
    """Fall(G) is empty, so chi_f / psi_f are undefined."""


class Undecided(Exception):
    """The search hit its wall-clock budget before reaching a verdict."""

    def __init__(self, message: str = "search budget exhausted", k: int | None = None):
        super().__init__(message)
        self.k = k


@dataclass(frozen=True)
class Coloring:
    """Dense vertex -> color map using every color in ``range(k)``."""

    colors: tuple[int, ...]

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if not colors:
            raise ValueError("a coloring needs at least one vertex")
        if min(colors) < 0:
            raise ValueError("color ids must be non-negative")
        missing = set(range(max(colors) + 1)) - set(colors)
        if missing:
            raise ValueError(f"colors {sorted(missing)} are never used")

    @property
    def k(self) -> int:
        return max(self.colors) + 1

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __iter__(self):
        return iter(self.colors)

    def classes(self) -> list[int]:
        """Color classes as vertex bitsets, indexed by color."""
        out = [0] * self.k
        for v, c in enumerate(self.colors):
            out[c] |= 1 << v
        return out

    @classmethod
    def parse(cls, text: str, one_based: bool = False) -> Coloring:
        values = [int(tok) for tok in text.split()]
        if one_based:
            values = [c - 1 for c in values]
        return cls(tuple(values))

    def to_line(self, one_based: bool = False) -> str:
        shift = 1 if one_based else 0
        return " ".join(str(c + shift) for c in self.colors)

    @classmethod
    def from_classes(cls, n: int, classes: Sequence[Iterable[int]]) -> Coloring:
        colors = [-1] * n
        for c, members in enumerate(classes):
            for v in members:
                if colors[v] != -1:
                    raise ValueError(f"vertex {v} lies in two classes")
                colors[v] = c
        if -1 in colors:
            raise ValueError(f"vertex {colors.index(-1)} is in no class")
        return cls(tuple(colors))


def _as_colors(g: Graph, f) -> Sequence[int]:
    colors = f.colors if isinstance(f, Coloring) else tuple(f)
    if len(colors) != g.n:
        raise ValueError(f"coloring has {len(colors)} entries but the graph has {g.n} vertices")
    return colors


def is_proper(g: Graph, f) -> bool:
    colors = _as_colors(g, f)
    return all(colors[u] != colors[v] for u, v in g.edges())


def is_colorful(g: Graph, f, v: int) -> bool:
    colors = _as_colors(g, f)
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    k = max(colors) + 1
    seen = {colors[u] for u in bits(g.closed(v))}
    return len(seen) == k


def is_fall(g: Graph, f) -> bool:
    colors = _as_colors(g, f)
    k = max(colors) + 1
    if len(set(colors)) != k or min(colors) < 0:
        return False
    return is_proper(g, colors) and all(is_colorful(g, colors, v) for v in range(g.n))


def fall_defects(g: Graph, f) -> dict:
    """Verdict with the monochromatic edges and non-colorful vertices of ``f``."""
    colors = _as_colors(g, f)
    bad_edges = [[u, v] for u, v in g.edges() if colors[u] == colors[v]]
    lonely = [v for v in range(g.n) if not is_colorful(g, colors, v)]
    k = max(colors) + 1
    surjective = len(set(colors)) == k
    return {
        "proper": not bad_edges,
        "fall": not bad_edges and not lonely and surjective,
        "k": k,
        "surjective": surjective,
        "monochromatic_edges": bad_edges,
        "offending_vertices": lonely,
    }


def check_capacity(g: Graph, capacity: int = DEFAULT_CAPACITY) -> None:
    if capacity > ENGINE_MAX:
        raise CapacityError(f"capacity {capacity} exceeds the engine maximum {ENGINE_MAX}")
    if g.n > capacity:
        raise CapacityError(f"graph has {g.n} vertices; solver capacity is {capacity}")


class _Clock:
    def __init__(self, timeout: float | None, k: int | None = None):
        self.deadline = None if timeout is None else time.monotonic() + timeout
        self.k = k
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks & 255 == 1 and time.monotonic() > self.deadline:
            raise Undecided(f"timed out after {self.ticks} search nodes", self.k)


# -- chromatic number -------------------------------------------------------

def _greedy_dsatur(g: Graph) -> int:
    n = g.n
    classes: list[int] = []
    colored = 0
    sat = [0] * n  # bitmask of classes adjacent to v
    for _ in range(n):
        v = max((u for u in range(n) if not colored >> u & 1),
                key=lambda u: (sat[u].bit_count(), g.degree(u), -u))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        if c == len(classes):
            classes.append(0)
        classes[c] |= 1 << v
        colored |= 1 << v
        for u in bits(g.adj[v]):
            sat[u] |= 1 << c
    return len(classes)


def _k_colorable(g: Graph, k: int, clock: _Clock) -> bool:
    n = g.n
    adj = g.adj
    classes: list[int] = []

    def rec(uncolored: int) -> bool:
        if not uncolored:
            return True
        clock.tick()
        # DSATUR choice: most distinct adjacent classes, then most uncolored neighbours
        best, best_key, best_opts = -1, None, None
        for v in bits(uncolored):
            opts = [c for c, cl in enumerate(classes) if not adj[v] & cl]
            key = (len(opts), -(adj[v] & uncolored).bit_count())
            if best_key is None or key < best_key:
                best, best_key, best_opts = v, key, opts
                if not opts and len(classes) == k:
                    return False
        v = best
        rest = uncolored & ~(1 << v)
        for c in best_opts:
            classes[c] |= 1 << v
            if rec(rest):
                return True
            classes[c] &= ~(1 << v)
        if len(classes) < k:
            classes.append(1 << v)
            if rec(rest):
                return True
            classes.pop()
        return False

    return rec((1 << n) - 1)


def chromatic_number(g: Graph, capacity: int = DEFAULT_CAPACITY, timeout: float | None = None) -> int:
    check_capacity(g, capacity)
    clock = _Clock(timeout)
    lo = greedy_clique(g).bit_count()
    hi = _greedy_dsatur(g)
    for k in range(lo, hi):
        if _k_colorable(g, k, clock):
            return k
    return hi


# -- fall search -------------------------------------------------------------

def min_class_size(g: Graph, node_budget: int = 20000) -> int:
    """Lower bound on the size of any maximal independent set of ``g``.

    Exact (the independent domination number) when the branch and bound
    finishes within ``node_budget`` nodes, else ceil(n / (maxdeg + 1)).
    """
    n = g.n
    full = (1 << n) - 1
    spread = g.max_degree + 1
    floor_bound = -(-n // spread)
    closed = [g.closed(v) for v in range(n)]
    best = n + 1
    nodes = 0

    class _Stop(Exception):
        pass

    def rec(size: int, dominated: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise _Stop
        if dominated == full:
            best = min(best, size)
            return
        open_ = full & ~dominated
        if size + -(-open_.bit_count() // spread) >= best:
            return
        # branch on the undominated vertex with the fewest possible dominators
        u = min(bits(open_), key=lambda w: (closed[w] & open_).bit_count())
        for w in bits(closed[u] & open_):
            rec(size + 1, dominated | closed[w])

    try:
        rec(0, 0)
    except _Stop:
        return floor_bound
    return max(best, floor_bound)


def search_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


class _FallSearch:
    def __init__(self, g: Graph, k: int, min_class: int, clock: _Clock):
        self.g = g
        self.k = k
        self.min_class = min_class
        self.clock = clock
        n = g.n
        self.order = search_order(g)
        self.closed = [g.closed(v) for v in range(n)]
        ball = []
        for v in range(n):
            r = self.closed[v]
            for u in bits(g.adj[v]):
                r |= self.closed[u]
            ball.append(r)
        self.ball = ball
        self.color = [-1] * n
        self.cls: list[int] = []
        self.blocked: list[int] = []

    def run(self) -> tuple[int, ...] | None:
        if self._dfs(0, (1 << self.g.n) - 1):
            return tuple(self.color)
        return None

    def _ok(self, v: int, c: int, uncolored: int) -> bool:
        k = self.k
        used = len(self.cls)
        if (k - used) * self.min_class > uncolored.bit_count():
            return False
        cls = self.cls
        blocked = self.blocked
        if used == k:
            stuck = uncolored
            for b in blocked:
                stuck &= b
                if not stuck:
                    break
            if stuck:
                return False
        closed = self.closed
        near = closed[v]
        fresh = k - used
        for w in bits(near):
            nw = closed[w]
            open_w = nw & uncolored
            missing = fresh
            for c2 in range(used):
                if nw & cls[c2]:
                    continue
                if not open_w & ~blocked[c2]:
                    return False
                missing += 1
            if missing > open_w.bit_count():
                return False
        # only class c lost candidates outside N[v]
        cl = cls[c]
        avail = uncolored & ~blocked[c]
        for w in bits(self.ball[v] & ~near):
            nw = closed[w]
            if not nw & cl and not nw & avail:
                return False
        return True

    def _dfs(self, i: int, uncolored: int) -> bool:
        order = self.order
        if i == len(order):
            return True
        self.clock.tick()
        v = order[i]
        bit = 1 << v
        rest = uncolored & ~bit
        av = self.g.adj[v]
        cls, blocked = self.cls, self.blocked
        used = len(cls)
        for c in range(used):
            if blocked[c] & bit:
                continue
            saved_cls, saved_blk = cls[c], blocked[c]
            cls[c] = saved_cls | bit
            blocked[c] = saved_blk | av
            self.color[v] = c
            if self._ok(v, c, rest) and self._dfs(i + 1, rest):
                return True
            cls[c], blocked[c] = saved_cls, saved_blk
        if used < self.k:
            cls.append(bit)
            blocked.append(av)
            self.color[v] = used
            if self._ok(v, used, rest) and self._dfs(i + 1, rest):
                return True
            cls.pop()
            blocked.pop()
        self.color[v] = -1
        return False


def _fall_k_bounds(g: Graph) -> tuple[int, int, int]:
    """(lowest k worth trying, highest k worth trying, min class size)."""
    mc = min_class_size(g)
    lo = max(1, greedy_clique(g).bit_count())
    hi = min(g.min_degree + 1, g.n // mc)
    return lo, hi, mc


def find_fall_coloring(
    g: Graph,
    k: int,
    capacity: int = DEFAULT_CAPACITY,
    timeout: float | None = None,
) -> Coloring | None:
    """A fall k-coloring of ``g`` or None; raises :class:`Undecided` on timeout.

    Among all fall k-colorings the one returned has the lexicographically
    smallest color sequence along :func:`search_order`, with new colors
    numbered in order of first appearance.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    check_capacity(g, capacity)
    lo, hi, mc = _fall_k_bounds(g)
    if not lo <= k <= hi:
        return None
    return _find(g, k, mc, _Clock(timeout, k))


def _find(g: Graph, k: int, min_class: int, clock: _Clock) -> Coloring | None:
    found = _FallSearch(g, k, min_class, clock).run()
    if found is None:
        return None
    out = Coloring(found)
    if not is_fall(g, out):
        raise AssertionError(f"search produced a non-fall coloring {found}")
    return out


@dataclass(frozen=True)
class FallReport:
    fall_set: tuple[int, ...]
    witnesses: dict[int, Coloring] = field(default_factory=dict)
    undecided: tuple[int, ...] = ()

    def __post_init__(self):
        if tuple(sorted(set(self.fall_set))) != tuple(self.fall_set):
            raise ValueError("fall_set must be sorted and duplicate-free")
        if set(self.witnesses) != set(self.fall_set):
            raise ValueError("need exactly one witness per member of fall_set")
        for k, w in self.witnesses.items():
            if w.k != k:
                raise ValueError(f"witness for k={k} uses {w.k} colors")

    @property
    def chi_f(self) -> int | None:
        return self.fall_set[0] if self.fall_set else None

    @property
    def psi_f(self) -> int | None:
        return self.fall_set[-1] if self.fall_set else None

    @property
    def decided(self) -> bool:
        return not self.undecided

    def to_dict(self, one_based: bool = False) -> dict:
        shift = 1 if one_based else 0
        return {
            "chi_f": self.chi_f,
            "fall_set": list(self.fall_set),
            "psi_f": self.psi_f,
            "undecided": list(self.undecided),
            "witnesses": {str(k): [c + shift for c in self.witnesses[k]] for k in self.fall_set},
        }

    def to_json(self, one_based: bool = False) -> str:
        return json.dumps(self.to_dict(one_based), sort_keys=True)


def _component_fall(g: Graph, ks: Iterable[int], timeout: float | None):
    """Per-k search on one graph: (found witnesses, undecided ks)."""
    lo, hi, mc = _fall_k_bounds(g)
    found: dict[int, Coloring] = {}
    undecided = []
    for k in ks:
        if not lo <= k <= hi:
            continue
        try:
            w = _find(g, k, mc, _Clock(timeout, k))
        except Undecided:
            undecided.append(k)
            continue
        if w is not None:
            found[k] = w
    return found, undecided


def fall_set(
    g: Graph,
    capacity: int = DEFAULT_CAPACITY,
    timeout: float | None = None,
    ks: Iterable[int] | None = None,
) -> FallReport:
    """Fall(g) with one witness per member.

    Components are solved separately and their fall sets intersected.
    ``timeout`` applies to each single (component, k) search; values that
    run out of time land in ``undecided`` instead of being excluded.
    ``ks`` restricts which k are examined (default: all of 1..mindeg+1).
    """
    check_capacity(g, capacity)
    top = g.min_degree + 1
    alive = sorted({k for k in (range(1, top + 1) if ks is None else ks) if 1 <= k <= top})
    comps = connected_components(g)
    if len(comps) == 1:
        found, undecided = _component_fall(g, alive, timeout)
        return FallReport(tuple(sorted(found)), found, tuple(undecided))

    pieces = []
    unsure: set[int] = set()
    # smaller components first: they are cheap and usually shrink the candidate set
    for comp in sorted(comps, key=len):
        sub, back = induced_subgraph(g, comp)
        found, undecided = _component_fall(sub, alive, timeout)
        pieces.append((back, found))
        unsure.update(undecided)
        alive = [k for k in alive if k in found or k in undecided]
        if not alive:
            break
    members = [k for k in alive if all(k in found for _, found in pieces)] if alive else []
    witnesses = {}
    for k in members:
        colors = [0] * g.n
        for back, found in pieces:
            for i, c in enumerate(found[k]):
                colors[back[i]] = c
        witnesses[k] = Coloring(tuple(colors))
    undecided = sorted(k for k in alive if k in unsure and k not in witnesses)
    return FallReport(tuple(members), witnesses, tuple(undecided))


def first_member(g: Graph, ks: Iterable[int], capacity: int = DEFAULT_CAPACITY,
                 timeout: float | None = None) -> tuple[int, Coloring]:
    """First k of ``ks`` (in the given order) that lies in Fall(g), with its witness."""
    for k in ks:
        report = fall_set(g, capacity, timeout, ks=[k])
        if report.undecided:
            raise Undecided(f"could not decide whether {k} is in Fall(G)", k)
        if report.fall_set:
            return k, report.witnesses[k]
    raise NoFallColoringError("graph has no fall coloring")


def chi_f(g: Graph, capacity: int = DEFAULT_CAPACITY, timeout: float | None = None) -> int:
    """Smallest member of Fall(g), searching upward and stopping at the first hit."""
    check_capacity(g, capacity)
    return first_member(g, range(1, g.min_degree + 2), capacity, timeout)[0]


def psi_f(g: Graph, capacity: int = DEFAULT_CAPACITY, timeout: float | None = None) -> int:
    """Largest member of Fall(g), searching downward and stopping at the first hit."""
    check_capacity(g, capacity)
    return first_member(g, range(g.min_degree + 1, 0, -1), capacity, timeout)[0]
