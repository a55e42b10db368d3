"""Type-II graph homomorphisms.

A map m: V(G) -> V(H) is type-II when it sends edges to edges and, for every
edge {a, b} of H, every vertex in the preimage of b has a neighbour in the
preimage of a.  Type-II maps into K_k are exactly fall k-colorings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import Coloring, is_fall
from .graph import Graph, ProductIndexMap, bits, cat_product, complete, lex_product


class NotType2Error(ValueError):
    """A map that was required to be a type-II homomorphism is not."""


class NotSurjectiveError(ValueError):
    """The inner map of a lexicographic lift must be onto."""


@dataclass(frozen=True)
class VertexMap:
    source: Graph
    target: Graph
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source.n:
            raise ValueError(f"map has {len(images)} images for {self.source.n} source vertices")
        bad = [v for v, i in enumerate(images) if not 0 <= i < self.target.n]
        if bad:
            raise ValueError(f"vertices {bad} map outside the target")

    def __call__(self, v: int) -> int:
        return self.images[v]

    def preimages(self) -> list[int]:
        """Preimage of each target vertex, as a source bitset."""
        pre = [0] * self.target.n
        for v, i in enumerate(self.images):
            pre[i] |= 1 << v
        return pre

    @property
    def surjective(self) -> bool:
        return len(set(self.images)) == self.target.n

    @classmethod
    def identity(cls, g: Graph) -> VertexMap:
        return cls(g, g, tuple(range(g.n)))


def is_type2_hom(m: VertexMap) -> bool:
    g, h, img = m.source, m.target, m.images
    for u, v in g.edges():
        if not h.has_edge(img[u], img[v]):
            return False
    pre = m.preimages()
    for a in range(h.n):
        for b in bits(h.adj[a]):
            for v in bits(pre[b]):
                if not g.adj[v] & pre[a]:
                    return False
    return True


def _require_type2(m: VertexMap, what: str) -> None:
    if not is_type2_hom(m):
        raise NotType2Error(f"{what} is not a type-II homomorphism")


def compose(m1: VertexMap, m2: VertexMap) -> VertexMap:
    """m2 after m1."""
    if m1.target != m2.source:
        raise ValueError("m1's target is not m2's source")
    return VertexMap(m1.source, m2.target, tuple(m2.images[i] for i in m1.images))


def hom_from_fall(g: Graph, f: Coloring) -> VertexMap:
    if not is_fall(g, f):
        raise ValueError("coloring is not a fall coloring")
    return VertexMap(g, complete(f.k), tuple(f))


def fall_from_hom(m: VertexMap) -> Coloring:
    k = m.target.n
    if m.target != complete(k):
        raise ValueError("target is not a complete graph")
    _require_type2(m, "map")
    # type-II into K_k forces every color to appear
    assert m.surjective, "type-II map into a complete graph must be onto"
    return Coloring(m.images)


def lex_hom(m1: VertexMap, m2: VertexMap) -> VertexMap:
    """(x, y) -> (m1(x), m2(y)) from G1[H1] to G2[H2]."""
    if not m2.surjective:
        raise NotSurjectiveError("inner map must be surjective")
    _require_type2(m1, "outer map")
    _require_type2(m2, "inner map")
    return _pair_map(m1, m2, lex_product)


def cat_hom(m1: VertexMap, m2: VertexMap) -> VertexMap:
    """(x, y) -> (m1(x), m2(y)) from G1 x H1 to G2 x H2."""
    _require_type2(m1, "first map")
    _require_type2(m2, "second map")
    return _pair_map(m1, m2, cat_product)


def _pair_map(m1: VertexMap, m2: VertexMap, build) -> VertexMap:
    src = build(m1.source, m2.source)
    dst = build(m1.target, m2.target)
    idx = ProductIndexMap(m1.target.n, m2.target.n)
    images = tuple(idx.pair(m1(x), m2(y)) for x in range(m1.source.n) for y in range(m2.source.n))
    out = VertexMap(src, dst, images)
    if __debug__:
        _require_type2(out, "lifted map")
    return out


def find_type2_hom(g: Graph, h: Graph) -> VertexMap | None:
    """Exhaustive search over maps V(g) -> V(h); meant for tiny oracle checks.

    Partial maps are extended vertex by vertex and dropped as soon as an edge
    between two mapped vertices lands on a non-edge.
    """
    images = [0] * g.n

    def rec(v: int) -> VertexMap | None:
        if v == g.n:
            m = VertexMap(g, h, tuple(images))
            return m if is_type2_hom(m) else None
        earlier = g.adj[v] & ((1 << v) - 1)
        for i in range(h.n):
            if all(h.has_edge(i, images[u]) for u in bits(earlier)):
                images[v] = i
                found = rec(v + 1)
                if found is not None:
                    return found
        return None

    return rec(0)


def pull_back(m: VertexMap, f: Coloring) -> Coloring:
    """Fall coloring of m.source from a fall coloring ``f`` of m.target."""
    return fall_from_hom(compose(m, hom_from_fall(m.target, f)))


def parse_map(text: str, source: Graph, target: Graph) -> VertexMap:
    return VertexMap(source, target, tuple(int(tok) for tok in text.split()))
