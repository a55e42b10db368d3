"""Search for pairs (G, H) with chi_f(G x H) < min(chi_f(G), chi_f(H)).

The inequality chi_f(G x H) <= min(chi_f(G), chi_f(H)) always holds, and is
asserted here by lifting the smaller factor's witness to the product.  Only
k below that minimum has to be searched to decide equality.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .constructions import cat_project
from .corpus import connected_graphs
from .engine import (
    DEFAULT_CAPACITY,
    Coloring,
    NoFallColoringError,
    Undecided,
    fall_set,
    first_member,
    is_fall,
)
from .graph import Graph, cat_product
from .graph6 import to_graph6


@dataclass(frozen=True)
class CorpusEntry:
    graph: Graph
    chi_f: int
    witness: Coloring


@dataclass
class HuntReport:
    corpus_size: int
    verified: list[tuple[str, str, int]] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "corpus_size": self.corpus_size,
            "counterexamples": self.counterexamples,
            "pairs_verified": len(self.verified),
            "skipped": [list(p) for p in self.skipped],
        }


def build_corpus(graphs: list[Graph], capacity: int = DEFAULT_CAPACITY,
                 timeout: float | None = None) -> list[CorpusEntry]:
    """Keep the graphs with nonempty Fall, with chi_f and its witness.

    Graphs whose chi_f cannot be settled within ``timeout`` are dropped.
    """
    out = []
    for g in graphs:
        try:
            k, w = first_member(g, range(1, g.min_degree + 2), capacity, timeout)
        except (NoFallColoringError, Undecided):
            continue
        out.append(CorpusEntry(g, k, w))
    return out


def default_corpus(max_n: int, capacity: int = DEFAULT_CAPACITY,
                   timeout: float | None = None) -> list[CorpusEntry]:
    return build_corpus(connected_graphs(max_n), capacity, timeout)


def _lift_min(a: CorpusEntry, b: CorpusEntry) -> tuple[Graph, Coloring]:
    if a.chi_f <= b.chi_f:
        return cat_project(a.graph, a.witness, b.graph)
    prod = cat_product(a.graph, b.graph)
    colors = Coloring(tuple(b.witness[y] for _ in range(a.graph.n) for y in range(b.graph.n)))
    if not is_fall(prod, colors):
        raise AssertionError("second-factor projection is not a fall coloring")
    return prod, colors


def check_pair(a: CorpusEntry, b: CorpusEntry, capacity: int = DEFAULT_CAPACITY,
               timeout: float | None = None) -> dict:
    """Outcome for one pair: status is 'equal', 'counterexample' or 'skipped'."""
    m = min(a.chi_f, b.chi_f)
    prod, lifted = _lift_min(a, b)
    assert lifted.k == m, "projected witness must use min(chi_f) colors"
    names = (to_graph6(a.graph), to_graph6(b.graph))
    if prod.n > capacity:
        return {"pair": names, "status": "skipped", "reason": "capacity"}
    report = fall_set(prod, capacity, timeout, ks=range(1, m))
    if report.fall_set:
        k = report.chi_f
        return {
            "pair": names,
            "status": "counterexample",
            "chi_f_product": k,
            "min_chi_f": m,
            "product_graph6": to_graph6(prod),
            "witness": list(report.witnesses[k]),
        }
    if report.undecided:
        return {"pair": names, "status": "skipped", "reason": f"undecided for k in {list(report.undecided)}"}
    return {"pair": names, "status": "equal", "chi_f": m}


def _check_star(args):
    return check_pair(*args)


def hunt(corpus: list[CorpusEntry], capacity: int = DEFAULT_CAPACITY, timeout: float | None = None,
         workers: int = 1, sample: int | None = None, seed: int = 0) -> HuntReport:
    """Check every unordered pair (with repetition) of the corpus.

    ``sample`` restricts the run to that many pairs, drawn with ``seed``.
    Results are reported in pair order regardless of ``workers``.
    """
    pairs = [(i, j) for i in range(len(corpus)) for j in range(i, len(corpus))]
    if sample is not None and sample < len(pairs):
        pairs = sorted(random.Random(seed).sample(pairs, sample))
    jobs = [(corpus[i], corpus[j], capacity, timeout) for i, j in pairs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_star, jobs, chunksize=4))
    else:
        results = [_check_star(job) for job in jobs]
    report = HuntReport(len(corpus))
    for res in results:
        a, b = res["pair"]
        if res["status"] == "equal":
            report.verified.append((a, b, res["chi_f"]))
        elif res["status"] == "counterexample":
            report.counterexamples.append(res)
        else:
            report.skipped.append((a, b))
    return report
