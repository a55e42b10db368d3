"""Command-line front end.

Exit codes: 0 success / verdict true, 1 verdict false, 2 usage or parse
error, 3 capacity exceeded or search timed out.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from . import constructions as cons
from . import graph as gr
from .corpus import connected_graphs
from .engine import (
    DEFAULT_CAPACITY,
    ENGINE_MAX,
    CapacityError,
    Coloring,
    NoFallColoringError,
    Undecided,
    fall_defects,
    fall_set,
    first_member,
    is_fall,
)
from .graph6 import Graph6Error, parse_graph6, to_graph6
from .homs import VertexMap, is_type2_hom
from .hunter import build_corpus, hunt
from .reductions import (
    DEFAULT_GHAT_BUDGET,
    NotBipartiteError,
    complement_matching,
    fall_of_bipartite_complement,
    fall_via_ghat,
    ghat_count,
)

log = logging.getLogger("fallcolor")

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    timeout: float | None = None
    fmt: str = "json"
    capacity: int = DEFAULT_CAPACITY
    seed: int = 0
    one_based: bool = False

    def __post_init__(self):
        if self.timeout is not None and self.timeout <= 0:
            raise UsageError("--timeout must be positive")
        if not 1 <= self.capacity <= ENGINE_MAX:
            raise UsageError(f"--capacity must lie in 1..{ENGINE_MAX}")
        if self.fmt not in ("json", "text"):
            raise UsageError("--format must be json or text")


def _emit(cfg: RunConfig, payload: dict, text_lines: list[str] | None = None) -> None:
    if cfg.fmt == "json" or text_lines is None:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _graph(text: str):
    try:
        return parse_graph6(text)
    except Graph6Error as exc:
        raise UsageError(f"bad graph6 {text!r}: {exc}") from exc


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"{what} must be an integer, got {text!r}") from exc


# -- build ---------------------------------------------------------------------

_BUILD_ARITY = {
    "complement": 1, "mycielski": 1, "power2": 1,
    "lex": 2, "cat": 2,
}


def cmd_build(args, cfg: RunConfig) -> int:
    family, operands = args.family, args.operands
    if family in gr.FAMILIES:
        if len(operands) != 1:
            raise UsageError(f"build {family} takes one integer, got {operands}")
        try:
            g = gr.build_named(family, _int(operands[0], "n"))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    elif family in ("join", "union"):
        if not operands:
            raise UsageError(f"build {family} needs at least one graph6 operand")
        graphs = [_graph(op) for op in operands]
        g = cons.join_all(graphs) if family == "join" else gr.disjoint_union(graphs)
    elif family in _BUILD_ARITY:
        if len(operands) != _BUILD_ARITY[family]:
            raise UsageError(f"build {family} takes {_BUILD_ARITY[family]} graph6 operand(s), got {len(operands)}")
        graphs = [_graph(op) for op in operands]
        g = {
            "complement": lambda: gr.complement(graphs[0]),
            "mycielski": lambda: gr.mycielskian(graphs[0]),
            "power2": lambda: gr.distance2_power(graphs[0]),
            "lex": lambda: gr.lex_product(graphs[0], graphs[1]),
            "cat": lambda: gr.cat_product(graphs[0], graphs[1]),
        }[family]()
    else:
        raise UsageError(f"unknown family {family!r}")
    if args.dot:
        sys.stdout.write(g.to_dot())
    else:
        print(to_graph6(g))
    return EXIT_OK


# -- fall / verify -------------------------------------------------------------

def cmd_fall(args, cfg: RunConfig) -> int:
    g = _graph(args.graph6)
    report = fall_set(g, cfg.capacity, cfg.timeout)
    lines = [
        f"fall_set: {' '.join(map(str, report.fall_set)) or '(empty)'}",
        f"chi_f: {report.chi_f}",
        f"psi_f: {report.psi_f}",
    ]
    lines += [f"witness {k}: {report.witnesses[k].to_line(cfg.one_based)}" for k in report.fall_set]
    if report.undecided:
        lines.append(f"undecided: {' '.join(map(str, report.undecided))}")
    _emit(cfg, report.to_dict(cfg.one_based), lines)
    return EXIT_LIMIT if report.undecided else EXIT_OK


def _read_coloring(path: str, one_based: bool) -> list[int]:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise UsageError(f"cannot read coloring file {path!r}: {exc}") from exc
    try:
        values = [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise UsageError(f"coloring file {path!r} must hold integers") from exc
    if one_based:
        values = [c - 1 for c in values]
    if not values or min(values) < 0:
        raise UsageError("coloring must be a nonempty list of non-negative color ids")
    return values


def cmd_verify(args, cfg: RunConfig) -> int:
    g = _graph(args.graph6)
    colors = _read_coloring(args.coloring, cfg.one_based)
    if len(colors) != g.n:
        raise UsageError(f"coloring has {len(colors)} entries but the graph has {g.n} vertices")
    verdict = fall_defects(g, colors)
    _emit(cfg, verdict, [f"{key}: {verdict[key]}" for key in sorted(verdict)])
    return EXIT_OK if verdict["fall"] else EXIT_FALSE


# -- construct -----------------------------------------------------------------

def _solver_witness(g, k: int | None, cfg: RunConfig) -> Coloring:
    ks = range(1, g.min_degree + 2) if k is None else [k]
    try:
        return first_member(g, ks, cfg.capacity, cfg.timeout)[1]
    except NoFallColoringError as exc:
        raise UsageError(f"{to_graph6(g)} has no fall coloring{'' if k is None else f' with {k} colors'}") from exc


def _construct(args, cfg: RunConfig) -> list[tuple[str, object, Coloring]]:
    name = args.name
    if name == "c5xc5":
        return [("c5xc5", *cons.c5xc5_coloring())]
    if name == "fixtures":
        return cons.fixture_colorings()
    need = {"case1": ("t", "rn"), "case2": ("rs", "rj", "rn"), "case4": ("ra", "rb", "rn")}
    if name in need:
        missing = [p for p in need[name] if getattr(args, p) is None]
        if missing:
            raise UsageError(f"construct {name} needs {', '.join('--' + p for p in missing)}")
        params = [getattr(args, p) for p in need[name]]
        builder = {"case1": cons.case1_coloring, "case2": cons.case2_coloring, "case4": cons.case4_coloring}[name]
        try:
            return [(name, *builder(*params))]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    graphs = [_graph(op) for op in args.graphs]
    if name == "lex-compose":
        if len(graphs) != 2:
            raise UsageError("lex-compose takes two graph6 operands")
        g, h = graphs
        base = _solver_witness(g, args.outer_k, cfg)
        inner = _solver_witness(h, args.inner_k, cfg)
        return [(name, gr.lex_product(g, h), cons.lex_compose(g, h, cons.uniform_family(base, inner)))]
    if name == "join-compose":
        if not graphs:
            raise UsageError("join-compose needs graph6 operands")
        ks = args.ks or [None] * len(graphs)
        if len(ks) != len(graphs):
            raise UsageError("--ks needs one value per graph")
        parts = [(g, _solver_witness(g, k, cfg)) for g, k in zip(graphs, ks)]
        return [(name, *cons.join_compose(parts))]
    if name == "cat-project":
        if len(graphs) != 2:
            raise UsageError("cat-project takes two graph6 operands")
        g, h = graphs
        return [(name, *cons.cat_project(g, _solver_witness(g, args.outer_k, cfg), h))]
    raise UsageError(f"unknown construction {name!r}")


def cmd_construct(args, cfg: RunConfig) -> int:
    ok = True
    for label, g, f in _construct(args, cfg):
        verdict = is_fall(g, f)
        ok &= verdict
        print(to_graph6(g))
        print(f.to_line(cfg.one_based))
        print(json.dumps({"fall": verdict, "k": f.k, "n": g.n, "name": label}, sort_keys=True))
    return EXIT_OK if ok else EXIT_FALSE


# -- homomorphisms / reductions -------------------------------------------------

def cmd_hom_verify(args, cfg: RunConfig) -> int:
    src, dst = _graph(args.source), _graph(args.target)
    text = args.map if args.map is not None else sys.stdin.readline()
    images = [_int(tok, "map entry") for tok in text.split()]
    if cfg.one_based:
        images = [i - 1 for i in images]
    try:
        m = VertexMap(src, dst, tuple(images))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    verdict = is_type2_hom(m)
    _emit(cfg, {"surjective": m.surjective, "type2": verdict}, [f"type2: {verdict}", f"surjective: {m.surjective}"])
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_ghat(args, cfg: RunConfig) -> int:
    g = _graph(args.graph6)
    try:
        count = ghat_count(g, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    verdict = fall_via_ghat(g, args.t, args.budget, cfg.capacity)
    _emit(cfg, {"choices": count, "in_fall": verdict, "t": args.t}, [f"t={args.t} in Fall: {verdict}"])
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_bipc(args, cfg: RunConfig) -> int:
    g = _graph(args.graph6)
    try:
        matching = complement_matching(g)
        report = fall_of_bipartite_complement(g)
    except NotBipartiteError as exc:
        raise UsageError(str(exc)) from exc
    payload = report.to_dict(cfg.one_based)
    payload["matching"] = [list(p) for p in matching.pairs] if matching is not None else None
    _emit(cfg, payload)
    return EXIT_OK if report.fall_set else EXIT_FALSE


# -- hunt ------------------------------------------------------------------------

def cmd_hunt(args, cfg: RunConfig) -> int:
    if args.graphs:
        graphs = [_graph(op) for op in args.graphs]
    else:
        if args.max_n < 1 or args.max_n ** 2 > cfg.capacity:
            raise UsageError(f"--max-n {args.max_n} gives products beyond capacity {cfg.capacity}")
        graphs = connected_graphs(args.max_n)
    corpus = build_corpus(graphs, cfg.capacity, cfg.timeout)
    log.info("corpus: %d graphs with nonempty Fall", len(corpus))
    report = hunt(corpus, cfg.capacity, cfg.timeout, workers=args.workers, sample=args.sample, seed=cfg.seed)
    payload = report.to_dict()
    for a, b in report.skipped:
        log.warning("skipped pair %s %s", a, b)
    _emit(cfg, payload, [
        f"corpus: {report.corpus_size}",
        f"pairs verified: {len(report.verified)}",
        f"counterexamples: {len(report.counterexamples)}",
        f"skipped: {len(report.skipped)}",
    ])
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the flags without defaults so they never mask a
        # value given before the subcommand name
        def d(value):
            return argparse.SUPPRESS if suppress else value
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--timeout", type=float, default=d(None), help="seconds per single search")
        p.add_argument("--format", dest="fmt", choices=("json", "text"), default=d("json"))
        p.add_argument("--capacity", type=int, default=d(DEFAULT_CAPACITY), help="largest n the solver accepts")
        p.add_argument("--seed", type=int, default=d(0))
        p.add_argument("--one-based", action="store_true", default=d(False),
                       help="read and print colors starting at 1")
        return p

    common = global_flags(True)
    parser = argparse.ArgumentParser(prog="fallcolor", description="Fall colorings of graphs.",
                                     parents=[global_flags(False)])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build a graph and print its graph6")
    p.add_argument("family")
    p.add_argument("operands", nargs="*")
    p.add_argument("--dot", action="store_true", help="print DOT instead of graph6")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("fall", parents=[common], help="compute Fall(G) with witnesses")
    p.add_argument("graph6")
    p.set_defaults(func=cmd_fall)

    p = sub.add_parser("verify", parents=[common], help="check a coloring file against a graph")
    p.add_argument("graph6")
    p.add_argument("coloring", help="file with one line of color ids, or - for stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", parents=[common], help="emit an explicit fall coloring")
    p.add_argument("name", choices=("c5xc5", "case1", "case2", "case4", "lex-compose",
                                    "join-compose", "cat-project", "fixtures"))
    p.add_argument("graphs", nargs="*", help="graph6 operands for the compose/project constructions")
    for flag in ("t", "rn", "rs", "rj", "ra", "rb"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--outer-k", type=int, help="colors for the first operand (default: its chi_f)")
    p.add_argument("--inner-k", type=int, help="colors for the second operand (default: its chi_f)")
    p.add_argument("--ks", type=int, nargs="+", help="colors per join-compose operand")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("hom", parents=[common], help="type-II homomorphism tools")
    hsub = p.add_subparsers(dest="hom_command", required=True)
    hv = hsub.add_parser("verify", parents=[common], help="check a map between two graphs")
    hv.add_argument("source")
    hv.add_argument("target")
    hv.add_argument("map", nargs="?", help="space-separated target ids (default: read one line from stdin)")
    hv.set_defaults(func=cmd_hom_verify)

    p = sub.add_parser("ghat", parents=[common], help="decide t in Fall(G) via the clique-completion family")
    p.add_argument("graph6")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_GHAT_BUDGET)
    p.set_defaults(func=cmd_ghat)

    p = sub.add_parser("bipc", parents=[common], help="Fall of the complement of a bipartite graph")
    p.add_argument("graph6")
    p.set_defaults(func=cmd_bipc)

    p = sub.add_parser("hunt", parents=[common], help="look for chi_f(G x H) < min(chi_f(G), chi_f(H))")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--graphs", nargs="+", help="explicit corpus as graph6 strings")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--sample", type=int, help="check only this many pairs, drawn with --seed")
    p.set_defaults(func=cmd_hunt)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(args.timeout, args.fmt, args.capacity, args.seed, args.one_based)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, Undecided) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (cons.ConstructionError, cons.NotFallError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
