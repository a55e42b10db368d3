"""Explicit fall colorings of product graphs.

Every builder verifies its own output with :func:`is_fall` and raises
:class:`ConstructionError` (carrying a graph6 + coloring dump) if the check
fails, so nothing unverified ever leaves this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Mapping, Sequence

from .engine import Coloring, is_fall
from .graph import Graph, ProductIndexMap, cat_product, complete, cycle, join, lex_product
from .graph6 import to_graph6


class ConstructionError(RuntimeError):
    """A builder produced a coloring that failed verification."""


class NotFallError(ValueError):
    """An input coloring that was required to be fall is not."""


def _verified(g: Graph, colors: Sequence[int], what: str) -> Coloring:
    out = Coloring(tuple(colors))
    if not is_fall(g, out):
        raise ConstructionError(
            f"{what}: output is not a fall coloring\n"
            f"graph6: {to_graph6(g)}\ncoloring: {out.to_line()}"
        )
    return out


def _require_fall(g: Graph, f: Coloring, what: str) -> None:
    if len(f) != g.n or not is_fall(g, f):
        raise NotFallError(f"{what} is not a fall coloring of its graph")


@dataclass(frozen=True)
class Derangement:
    perm: tuple[int, ...]

    def __post_init__(self):
        t = len(self.perm)
        if sorted(self.perm) != list(range(t)):
            raise ValueError(f"{self.perm} is not a permutation of range({t})")
        fixed = [i for i, j in enumerate(self.perm) if i == j]
        if fixed:
            raise ValueError(f"derangement has fixed points {fixed}")

    def __call__(self, i: int) -> int:
        return self.perm[i]

    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return tuple(inv)


def derangement(t: int) -> Derangement:
    """The cyclic shift i -> i+1 mod t."""
    if t < 2:
        raise ValueError(f"no derangement of {t} element(s)")
    return Derangement(tuple((i + 1) % t for i in range(t)))


@dataclass(frozen=True)
class ColoringFamily:
    """An outer fall coloring of G plus, per outer color, a fall coloring of H."""

    base: Coloring
    per_color: Mapping[int, Coloring]

    def validate(self, g: Graph, h: Graph) -> None:
        _require_fall(g, self.base, "outer coloring")
        missing = set(range(self.base.k)) - set(self.per_color)
        if missing:
            raise ValueError(f"no inner coloring for outer colors {sorted(missing)}")
        for c in range(self.base.k):
            _require_fall(h, self.per_color[c], f"inner coloring for outer color {c}")


def lex_compose(g: Graph, h: Graph, fam: ColoringFamily) -> Coloring:
    """Color (x, y) of G[H] by the pair (base(x), inner_{base(x)}(y)), flattened."""
    fam.validate(g, h)
    offsets = [0]
    for c in range(fam.base.k):
        offsets.append(offsets[-1] + fam.per_color[c].k)
    colors = []
    for x in range(g.n):
        outer = fam.base[x]
        inner = fam.per_color[outer]
        colors.extend(offsets[outer] + inner[y] for y in range(h.n))
    return _verified(lex_product(g, h), colors, "lex_compose")


def uniform_family(base: Coloring, inner: Coloring) -> ColoringFamily:
    return ColoringFamily(base, {c: inner for c in range(base.k)})


def join_all(graphs: Sequence[Graph]) -> Graph:
    if not graphs:
        raise ValueError("need at least one graph")
    return reduce(join, graphs)


def join_compose(parts: Sequence[tuple[Graph, Coloring]]) -> tuple[Graph, Coloring]:
    """Fall coloring of the join of ``parts`` using disjoint palettes."""
    if not parts:
        raise ValueError("need at least one part")
    colors = []
    offset = 0
    for i, (g, f) in enumerate(parts):
        _require_fall(g, f, f"part {i}")
        colors.extend(offset + c for c in f)
        offset += f.k
    g = join_all([g for g, _ in parts])
    return g, _verified(g, colors, "join_compose")


def cat_project(g: Graph, f: Coloring, h: Graph) -> tuple[Graph, Coloring]:
    """Lift a fall coloring of G to G x H by ignoring the second coordinate."""
    _require_fall(g, f, "input coloring")
    prod = cat_product(g, h)
    colors = [f[x] for x in range(g.n) for _ in range(h.n)]
    return prod, _verified(prod, colors, "cat_project")


def c5xc5_coloring() -> tuple[Graph, Coloring]:
    g = cat_product(cycle(5), cycle(5))
    colors = [(i + 2 * j) % 5 for i in range(5) for j in range(5)]
    return g, _verified(g, colors, "c5xc5")


# -- products of three complete graphs ----------------------------------------

def triple_product(a: int, b: int, c: int) -> tuple[Graph, ProductIndexMap, ProductIndexMap]:
    """K_a x K_b x K_c with vertex (x, y, z) at id (x*b + y)*c + z."""
    g = cat_product(cat_product(complete(a), complete(b)), complete(c))
    return g, ProductIndexMap(a, b), ProductIndexMap(a * b, c)


def _triple_id(b: int, c: int, x: int, y: int, z: int) -> int:
    return (x * b + y) * c + z


def case1_coloring(t: int, rn: int, sigma: Derangement | None = None) -> tuple[Graph, Coloring]:
    """Fall (t + rn - 2)-coloring of K_2 x K_t x K_rn.

    Color i < t is {(0,i,0), (0,s(i),1), (1,i,1), (1,s(i),0)}; every slab
    z >= 2 is one further class.
    """
    if not 3 <= t < rn:
        raise ValueError(f"need 3 <= t < rn, got t={t}, rn={rn}")
    sigma = sigma or derangement(t)
    if len(sigma.perm) != t:
        raise ValueError("derangement size must equal t")
    g, _, _ = triple_product(2, t, rn)
    colors = [-1] * g.n
    for i in range(t):
        for x, y, z in ((0, i, 0), (0, sigma(i), 1), (1, i, 1), (1, sigma(i), 0)):
            colors[_triple_id(t, rn, x, y, z)] = i
    for x in range(2):
        for y in range(t):
            for z in range(2, rn):
                colors[_triple_id(t, rn, x, y, z)] = t + z - 2
    return g, _verified(g, colors, f"case1(t={t}, rn={rn})")


def _block_color(rj: int, rn: int, sigma_inv: Sequence[int], x: int, y: int, z: int) -> int:
    """Tiled color of (x, y, z) for x, z inside the even ranges.

    The 2 x rj x 2 base block gives (0,y,0) and (1,y,1) color y and
    (0,y,1), (1,y,0) color s^-1(y), so (0,t,0),(0,s(t),1),(1,t,1),(1,s(t),0)
    share color t.  Blocks are offset by (x//2)*rj*rn/2 + (z//2)*rj.
    """
    base = y if (x & 1) == (z & 1) else sigma_inv[y]
    return (x // 2) * (rj * rn // 2) + (z // 2) * rj + base


def case2_coloring(rs: int, rj: int, rn: int, sigma: Derangement | None = None) -> tuple[Graph, Coloring]:
    """Fall (rs*rj*rn/4)-coloring of K_rs x K_rj x K_rn for even rs, rn."""
    if rs % 2 or rn % 2:
        raise ValueError(f"rs and rn must be even, got rs={rs}, rn={rn}")
    if min(rs, rj, rn) < 3:
        raise ValueError(f"all factors must be at least 3, got ({rs}, {rj}, {rn})")
    sigma = sigma or derangement(rj)
    if len(sigma.perm) != rj:
        raise ValueError("derangement size must equal rj")
    inv = sigma.inverse()
    g, _, _ = triple_product(rs, rj, rn)
    colors = [_block_color(rj, rn, inv, x, y, z) for x in range(rs) for y in range(rj) for z in range(rn)]
    return g, _verified(g, colors, f"case2({rs}, {rj}, {rn})")


def case4_coloring(ra: int, rb: int, rn: int, sigma: Derangement | None = None) -> tuple[Graph, Coloring]:
    """Fall ((ra-1)*rb*rn/4 + 1)-coloring of K_ra x K_rb x K_rn for odd ra, even rn.

    The first ra-1 x-slabs are tiled as in :func:`case2_coloring`; the last
    x-slab is a single extra class.
    """
    if ra % 2 == 0 or ra < 3:
        raise ValueError(f"ra must be odd and at least 3, got {ra}")
    if rn % 2 or rn < 4:
        raise ValueError(f"rn must be even and at least 4, got {rn}")
    if rb < 3:
        raise ValueError(f"rb must be at least 3, got {rb}")
    sigma = sigma or derangement(rb)
    if len(sigma.perm) != rb:
        raise ValueError("derangement size must equal rb")
    inv = sigma.inverse()
    extra = (ra - 1) * rb * rn // 4
    g, _, _ = triple_product(ra, rb, rn)
    colors = [
        extra if x == ra - 1 else _block_color(rb, rn, inv, x, y, z)
        for x in range(ra) for y in range(rb) for z in range(rn)
    ]
    return g, _verified(g, colors, f"case4({ra}, {rb}, {rn})")


def beyond_max_coloring(sizes: Sequence[int]) -> tuple[tuple[int, int, int], Graph, Coloring]:
    """Fall coloring with more than max(sizes) colors of a three-factor subproduct.

    ``sizes`` are distinct integers >= 2, at least three of them, at least one
    even.  Returns the factor sizes used (in graph order), the graph and the
    coloring; by projection the same k is in Fall of the full product.
    """
    r = sorted(set(sizes))
    if len(r) != len(sizes) or len(r) < 3 or r[0] < 2:
        raise ValueError("need at least three distinct sizes, all >= 2")
    evens = [x for x in r if x % 2 == 0]
    if not evens:
        raise ValueError("at least one size must be even")
    top = r[-1]
    if r[0] == 2:
        t = r[1]
        if t == 2 or t == top:
            raise ValueError("case1 needs a middle size")
        factors = (2, t, top)
        g, f = case1_coloring(t, top)
    elif len(evens) >= 2:
        if top % 2 == 0:
            rs = evens[-2]
            rj = next(x for x in r if x not in (rs, top))
            factors = (rs, rj, top)
        else:
            rs, rn = evens[-2], evens[-1]
            factors = (rs, top, rn)
        g, f = case2_coloring(*factors)
    else:
        even = evens[0]
        odds = [x for x in r if x % 2]
        if top % 2 == 0:
            factors = (r[-3], r[-2], top)
        else:
            ra = odds[-1]
            rb = next(x for x in r if x not in (ra, even))
            factors = (ra, rb, even)
        g, f = case4_coloring(*factors)
    if f.k <= top:
        raise ConstructionError(f"construction for {r} gives only {f.k} colors")
    return factors, g, f


def layer_color_sets(g: Graph, h: Graph, f: Coloring) -> dict[int, frozenset[int]]:
    """Colors on each layer {x} x V(h) of a fall coloring of G[H].

    Each layer's restriction, renamed onto 0..|S_x|-1, is checked to be a fall
    coloring of ``h``.
    """
    prod = lex_product(g, h)
    _require_fall(prod, f, "product coloring")
    out = {}
    for x in range(g.n):
        layer = [f[x * h.n + y] for y in range(h.n)]
        palette = sorted(set(layer))
        rename = {c: i for i, c in enumerate(palette)}
        restricted = Coloring(tuple(rename[c] for c in layer))
        if not is_fall(h, restricted):
            raise ConstructionError(f"layer {x} does not carry a fall coloring of H")
        out[x] = frozenset(palette)
    return out


# Hand-written fall 5-colorings of C5[K2], C9[K2], C8[K2], 1-based, in
# lexicographic vertex order (1,1), (1,2), (2,1), ...
_FIXTURES_ONE_BASED = {
    "C5[K2]": (5, [1, 2, 3, 4, 1, 5, 2, 4, 5, 3]),
    "C9[K2]": (9, [1, 4, 2, 3, 5, 1, 4, 2, 3, 1, 5, 2, 4, 3, 1, 2, 5, 3]),
    "C8[K2]": (8, [1, 2, 3, 4, 5, 1, 2, 3, 4, 1, 5, 2, 3, 1, 5, 4]),
}


def fixture_colorings() -> list[tuple[str, Graph, Coloring]]:
    out = []
    for name, (cn, colors) in _FIXTURES_ONE_BASED.items():
        g = lex_product(cycle(cn), complete(2))
        out.append((name, g, Coloring(tuple(c - 1 for c in colors))))
    return out
