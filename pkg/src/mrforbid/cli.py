"""Command-line front end.

Vertex labels in all output are 0-indexed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from typing import Sequence

from . import ENGINE_VERSION
from .cache import ResultCache
from .forbidden import (
    CatalogIndex,
    ForbiddenCatalog,
    catalog_report,
    certify_minimal,
    find_forbidden,
)
from .gflin import FieldSpec
from .graphs import Graph, GraphFormatError, graph6_decode, graph6_encode, named_graph
from .minrank import (
    MAX_OUTSIDE,
    BudgetExceeded,
    Embedding,
    edge_incidence_holds,
    find_optimal_triple,
    increase_profile,
    min_rank,
    min_rank_set,
    mr_method,
    mr_via_cut_vertex,
    structural_properties,
    triple_conditions,
)

EXIT_OK = 0
EXIT_INPUT = 3
EXIT_BUDGET = 4
EXIT_NO_EMBEDDING = 5
EXIT_MISMATCH = 6

LABEL_NOTE = "(vertex labels are 0-indexed)"


class InputError(ValueError):
    pass


def _graph_from_args(args) -> Graph:
    if getattr(args, "named", None):
        try:
            return named_graph(args.named)
        except KeyError as exc:
            raise InputError(str(exc)) from None
    if not getattr(args, "graph", None):
        raise InputError("give a graph6 code or --named NAME")
    try:
        return graph6_decode(args.graph)
    except GraphFormatError as exc:
        raise InputError(f"bad graph6 {args.graph!r}: {exc}") from None


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps({"schema": 1, **payload}, sort_keys=True))
    else:
        print(text)


def _open_cache(args) -> ResultCache | None:
    path = args.cache or os.environ.get("MRFORBID_CACHE")
    if not path or args.no_cache:
        return None
    return ResultCache(path)


def cmd_mr(args) -> int:
    g = _graph_from_args(args)
    p = FieldSpec(args.field).p
    cache = _open_cache(args)
    hit = cache.get(g, p) if cache else None
    if hit is not None and not args.verify_cache:
        mr, method = hit.mr, "cache"
    else:
        if args.cut_vertex:
            mr = mr_via_cut_vertex(p, g, args.budget)
            method = mr_method(p, g)
        else:
            mr = min_rank(p, g, args.budget)
            method = "brute force"
        if hit is not None and hit.mr != mr:
            print(f"cache mismatch: stored {hit.mr}, recomputed {mr}", file=sys.stderr)
            return EXIT_MISMATCH
        if cache is not None:
            cache.put(g, p, mr)
    g6 = graph6_encode(g)
    _emit(args, {"graph6": g6, "n": g.n, "field": p, "mr": mr, "method": method},
          f"mr(GF({p}), {g6}) = {mr}    [{method}]")
    return EXIT_OK


def cmd_mrset(args) -> int:
    g = _graph_from_args(args)
    ms = min_rank_set(args.field, g, args.budget)
    if args.json:
        _emit(args, {
            "graph6": graph6_encode(g),
            "field": ms.field.p,
            "mr": ms.mr,
            "matrices": [m.to_lists() for m in ms.matrices],
            "classes": [list(c) for c in ms.classes],
        }, "")
        return EXIT_OK
    print(f"graph {graph6_encode(g)} over GF({ms.field.p}): mr = {ms.mr}, {len(ms)} attaining matrices, "
          f"{len(ms.classes)} column-space classes {LABEL_NOTE}")
    for i, m in enumerate(ms.matrices):
        print(f"M{i + 1}  (class C{ms.class_of(i) + 1})")
        for row in m.entries:
            print("  " + " ".join(str(x) for x in row))
    for c, members in enumerate(ms.classes):
        print(f"C{c + 1} = {{{', '.join(f'M{i + 1}' for i in members)}}}")
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        cat = find_forbidden(args.field, args.k, args.max_n, args.budget, args.jobs)
    except BudgetExceeded as exc:
        print(f"search aborted: {exc}; no catalog written", file=sys.stderr)
        return EXIT_BUDGET
    if args.out:
        cat.write(args.out)
    report = catalog_report(cat)
    if args.json:
        print(json.dumps(report, sort_keys=True))
        return EXIT_OK
    print(f"F_{args.k + 1}(GF({args.field})) on <= {args.max_n} vertices: {len(cat)} graphs")
    print("  by vertex count: " + ", ".join(f"{n}: {c}" for n, c in report["by_vertices"].items()))
    split = report["connectivity_split"]
    print(f"  disconnected: {split['disconnected']}, with cut vertex: {split['cut_vertex']}, "
          f"2-connected: {report['by_connectivity']['two_connected']}")
    print(f"  largest member: {report['max_vertices']} vertices")
    if args.out:
        print(f"  catalog written to {args.out}")
    return EXIT_OK


def cmd_report(args) -> int:
    cat = ForbiddenCatalog.read(args.catalog)
    print(json.dumps(catalog_report(cat), indent=None if args.json else 2, sort_keys=True))
    return EXIT_OK


def cmd_certify(args) -> int:
    g = _graph_from_args(args)
    cert = certify_minimal(args.field, args.k, g, args.budget)
    _emit(args, cert.as_dict(),
          f"{cert.graph6}: mr = {cert.mr}, deletions {list(cert.deletion_mr)} -> "
          f"{'minimal' if cert.minimal else 'not minimal'} for rank bound {cert.k}")
    return EXIT_OK


def cmd_check(args) -> int:
    cat = ForbiddenCatalog.read(args.catalog)
    if (cat.field.p, cat.k) != (2, 3):
        print("warning: verdicts assume the F_4(GF(2)) catalog", file=sys.stderr)
    index = CatalogIndex(cat)
    checked: list[tuple[Graph, bool]] = []
    for line in sys.stdin:
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            g = graph6_decode(s)
            le3 = index.find(g) is None
        except (GraphFormatError, ValueError) as exc:
            print(f"{s}\terror: {exc}")
            continue
        print(f"{s}\t{'mr<=3' if le3 else 'mr>=4'}")
        checked.append((g, le3))
    if args.verify and checked:
        rng = random.Random(args.seed)
        sample = rng.sample(checked, min(args.verify, len(checked)))
        bad = [graph6_encode(g) for g, le3 in sample if (min_rank(2, g, args.budget) <= 3) != le3]
        print(f"# verified {len(sample)} verdicts by brute force: {len(bad)} disagreements", file=sys.stderr)
        if bad:
            return EXIT_MISMATCH
    return EXIT_OK


def _fmt_set(prof, mask: int) -> str:
    return "{" + ", ".join(f"M{i + 1}" for i in prof.sets(mask)) + "}"


def cmd_triples(args) -> int:
    g = _graph_from_args(args)
    try:
        pattern = named_graph(args.pattern)
    except KeyError as exc:
        raise InputError(str(exc)) from None
    if pattern.n > g.n:
        print(f"no induced copy of {args.pattern}: pattern is larger than the host", file=sys.stderr)
        return EXIT_NO_EMBEDDING
    embs = list(Embedding.all(g, pattern))
    if not embs:
        print(f"no induced copy of {args.pattern} in {graph6_encode(g)}", file=sys.stderr)
        return EXIT_NO_EMBEDDING
    if not 0 <= args.copy < len(embs):
        raise InputError(f"--copy must be in [0, {len(embs)})")
    emb = embs[args.copy]
    if len(emb.outside) > MAX_OUTSIDE:
        raise InputError(f"G-H has {len(emb.outside)} vertices (limit {MAX_OUTSIDE})")
    ms = min_rank_set(args.field, pattern, args.budget)
    prof = increase_profile(emb, ms)
    tri = find_optimal_triple(emb, ms, prof)
    payload = {
        "host": graph6_encode(g),
        "pattern": args.pattern,
        "copies": len(embs),
        "embedding": list(emb.map),
        "outside": list(emb.outside),
        "mr_pattern": ms.mr,
        "classes": [list(c) for c in ms.classes],
        "weights": {str(v): list(w) for v, w in prof.vertex_weights.items()},
        "pair_weights": {f"{u}-{v}": c for (u, v), c in prof.pair_weights.items()},
        "I_v": {str(v): prof.sets(m) for v, m in prof.I_v.items()},
        "I_uv": {f"{u}-{v}": prof.sets(m) for (u, v), m in prof.I_uv.items()},
        "edge_incidence": edge_incidence_holds(prof),
        "triple": None,
    }
    if tri is not None:
        payload["triple"] = {
            "R": [list(e) for e in tri.R],
            "S": list(tri.S),
            "T": list(tri.T),
            "objective": list(tri.objective),
            "uses_nonedges": tri.uses_nonedges(prof),
            "conditions": triple_conditions(prof, tri),
            "properties": structural_properties(prof, tri, in_relative_family=args.assume_relative),
            "outside_bound": len(emb.outside) <= 2 * len(tri.R) + len(tri.T),
        }
    if args.json:
        _emit(args, payload, "")
        return EXIT_OK
    print(f"host {payload['host']}, pattern {args.pattern} (copy {args.copy} of {len(embs)}) {LABEL_NOTE}")
    print("embedding: " + ", ".join(f"h{k}->{v}" for k, v in enumerate(emb.map)))
    print(f"G-H = {list(emb.outside)}; mr(H) = {ms.mr}; |MR(H)| = {len(ms)}; classes "
          + " ".join("{" + ",".join(f"M{i + 1}" for i in c) + "}" for c in ms.classes))
    for v in emb.outside:
        print(f"  wt({v}) = {list(prof.vertex_weights[v])}   I_{v} = {_fmt_set(prof, prof.I_v[v])}")
    for (u, v), m in prof.I_uv.items():
        print(f"  wt({u}{v}) = {prof.pair_weights[(u, v)]}   I_{u}{v} = {_fmt_set(prof, m)}")
    if tri is None:
        print("no cover of MR(H): every vertex and pair is rank-preserving for some M, so mr(G) = mr(H)")
    else:
        t = payload["triple"]
        print(f"optimal triple: R = {t['R']}, S = {t['S']}, T = {t['T']}, objective (2|R|+|T|, |R|, |S|) = {tuple(t['objective'])}")
        print(f"  uses non-edges: {t['uses_nonedges']}; |G-H| <= 2|R|+|T|: {t['outside_bound']}")
        for name, ok in {**t["conditions"], **t["properties"]}.items():
            print(f"  {name}: {'n/a' if ok is None else ok}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    default_budget = int(os.environ.get("MRFORBID_BUDGET", 10**8))
    parser = argparse.ArgumentParser(prog="mrforbid", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--version", action="version", version=ENGINE_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(sp):
        sp.add_argument("graph", nargs="?", help="graph6 code")
        sp.add_argument("--named", help="named graph, e.g. full_house, dart, P5, 3K2, K3,3")

    def common(sp, field=True):
        if field:
            sp.add_argument("--field", type=int, default=2, choices=(2, 3, 5, 7))
        sp.add_argument("--budget", type=int, default=default_budget)
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("mr", help="minimum rank of one graph")
    graph_args(sp)
    common(sp)
    sp.add_argument("--cut-vertex", action="store_true", help="decompose at components and cut vertices")
    sp.add_argument("--cache", help="JSON-lines result cache (default: $MRFORBID_CACHE)")
    sp.add_argument("--no-cache", action="store_true")
    sp.add_argument("--verify-cache", action="store_true", help="recompute and compare against a cache hit")
    sp.set_defaults(func=cmd_mr)

    sp = sub.add_parser("mrset", help="rank-attaining matrices and column-space classes")
    graph_args(sp)
    common(sp)
    sp.set_defaults(func=cmd_mrset)

    sp = sub.add_parser("search", help="exhaustive minimal forbidden subgraph search")
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", help="catalog file to write")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("certify", help="minimality certificate for one graph")
    graph_args(sp)
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("check", help="mr<=3 verdicts over GF(2) for graph6 lines on stdin")
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--verify", type=int, default=0, metavar="N", help="brute-force check N sampled verdicts")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=default_budget)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("report", help="summary of a catalog file")
    sp.add_argument("catalog")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("triples", help="rank-increase profile and optimal triple for an embedded pattern")
    graph_args(sp)
    common(sp)
    sp.add_argument("--pattern", required=True, help="named pattern graph, e.g. P4, dart, full_house")
    sp.add_argument("--copy", type=int, default=0, help="which induced copy (lexicographic order)")
    sp.add_argument("--assume-relative", action="store_true",
                    help="evaluate P3/P4, which presuppose G in F_{k+1}(H)")
    sp.set_defaults(func=cmd_triples)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
