"""Graph generation, minimal forbidden subgraph searches and the catalog file.

Levels of non-isomorphic graphs are built by adding a vertex with every
possible neighbourhood to each graph of the previous level and keeping one
representative per canonical form.  Minimum ranks are computed level by
level so that each graph inherits the lower bound mr(G - last vertex).
"""

from __future__ import annotations

import logging
import zlib
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from . import ENGINE_VERSION
from .gflin import FieldSpec, as_field
from .graphs import (
    CanonicalForm,
    Connectivity,
    Graph,
    canonical_form,
    connectivity_class,
    delete_vertex,
    graph6_decode,
    graph6_encode,
    induced_copies,
    induced_subgraph,
    read_graph6_lines,
)
from .minrank import min_rank

log = logging.getLogger(__name__)

MAX_GENERATION = 9


@dataclass(frozen=True)
class GenerationLevel:
    n: int
    members: tuple[CanonicalForm, ...]
    # canonical form of (member minus its last canonical vertex) for n >= 2
    parents: dict = dc_field(default_factory=dict, compare=False, hash=False)

    def __len__(self) -> int:
        return len(self.members)

    def graphs(self) -> list[Graph]:
        return [cf.graph() for cf in self.members]


def _augment(g: Graph) -> Iterable[Graph]:
    n = g.n + 1
    bit = 1 << g.n
    for nb in range(1 << g.n):
        rows = [r | bit if (nb >> j) & 1 else r for j, r in enumerate(g.adj)]
        rows.append(nb)
        yield Graph(n, tuple(rows))


@lru_cache(maxsize=None)
def generate_graphs(n: int) -> GenerationLevel:
    """One representative of every isomorphism class on ``n`` vertices."""
    if n > MAX_GENERATION:
        raise ValueError(f"generation is limited to {MAX_GENERATION} vertices")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 1:
        return GenerationLevel(n, (canonical_form(Graph.empty(n)),))
    prev = generate_graphs(n - 1)
    seen: dict[CanonicalForm, CanonicalForm] = {}
    for pcf in prev.members:
        for g in _augment(pcf.graph()):
            cf = canonical_form(g)
            if cf not in seen:
                seen[cf] = pcf
    members = tuple(sorted(seen))
    return GenerationLevel(n, members, {cf: seen[cf] for cf in members})


def canonical_filter(graphs: Iterable[Graph]) -> list[CanonicalForm]:
    """Distinct canonical forms among ``graphs`` (sorted)."""
    return sorted({canonical_form(g) for g in graphs})


# ---------------------------------------------------------------------------
# exact minimum ranks for whole levels


class RankTable:
    """mr(F, G) for every graph on at most ``max_n`` vertices, keyed by canonical form."""

    def __init__(self, field: FieldSpec | int, budget: int | None = None, jobs: int = 1):
        self.field = as_field(field)
        self.budget = budget
        self.jobs = jobs
        self.mr: dict[CanonicalForm, int] = {}
        self.levels: dict[int, GenerationLevel] = {}

    def ensure(self, max_n: int) -> None:
        for n in range(0, max_n + 1):
            if n in self.levels:
                continue
            level = generate_graphs(n)
            todo = []
            for cf in level.members:
                parent = level.parents.get(cf)
                lb = self.mr[parent] if parent is not None else 0
                todo.append((cf, lb))
            for cf, val in _map_ranks(self.field.p, todo, self.budget, self.jobs):
                self.mr[cf] = val
            self.levels[n] = level
            log.info("level %d: %d graphs ranked", n, len(level))

    def __getitem__(self, g: Graph | CanonicalForm) -> int:
        cf = g if isinstance(g, CanonicalForm) else canonical_form(g)
        if cf not in self.mr:
            self.ensure(cf.n)
        return self.mr[cf]

    def deletions(self, g: Graph) -> list[int]:
        return [self[delete_vertex(g, v)] for v in range(g.n)]


def _rank_chunk(args) -> list[tuple[CanonicalForm, int]]:
    p, items, budget = args
    return [(cf, min_rank(p, cf.graph(), budget, lower_bound=lb)) for cf, lb in items]


def _partition(items: Sequence, jobs: int, key) -> list[list]:
    buckets: list[list] = [[] for _ in range(jobs)]
    for it in items:
        buckets[zlib.crc32(key(it).code) % jobs].append(it)
    return buckets


def _map_ranks(p: int, items: list, budget: int | None, jobs: int) -> list[tuple[CanonicalForm, int]]:
    if jobs <= 1 or len(items) < 64:
        return _rank_chunk((p, items, budget))
    buckets = _partition(items, jobs, key=lambda it: it[0])
    out: list[tuple[CanonicalForm, int]] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_rank_chunk, [(p, b, budget) for b in buckets]):
            out.extend(part)
    return sorted(out)


# ---------------------------------------------------------------------------
# certificates and catalogs


@dataclass(frozen=True)
class Certificate:
    graph6: str
    field: int
    k: int
    mr: int
    deletion_mr: tuple[int, ...]

    @property
    def minimal(self) -> bool:
        return self.mr >= self.k + 1 and all(d <= self.k for d in self.deletion_mr)

    def as_dict(self) -> dict:
        return {
            "graph6": self.graph6,
            "field": self.field,
            "k": self.k,
            "mr": self.mr,
            "deletion_mr": list(self.deletion_mr),
            "minimal": self.minimal,
        }


def certify_minimal(field: FieldSpec | int, k: int, g: Graph, budget: int | None = None) -> Certificate:
    """mr(F, G) and mr(F, G - v) for every v, computed from scratch."""
    f = as_field(field)
    mr = min_rank(f, g, budget)
    dels = tuple(min_rank(f, delete_vertex(g, v), budget) for v in range(g.n))
    return Certificate(graph6_encode(g), f.p, k, mr, dels)


@dataclass(frozen=True)
class CatalogMember:
    canonical: CanonicalForm
    graph6: str
    n: int
    connectivity: Connectivity

    @classmethod
    def of(cls, cf: CanonicalForm) -> "CatalogMember":
        g = cf.graph()
        return cls(cf, graph6_encode(g), cf.n, connectivity_class(g))

    @property
    def graph(self) -> Graph:
        return self.canonical.graph()


@dataclass
class ForbiddenCatalog:
    field: FieldSpec
    k: int
    members: list[CatalogMember]
    provenance: dict = dc_field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.members)

    def sort(self) -> None:
        self.members.sort(key=lambda m: (m.n, m.canonical.code))

    def canonical_set(self) -> set[CanonicalForm]:
        return {m.canonical for m in self.members}

    def graphs(self) -> list[Graph]:
        return [m.graph for m in self.members]

    def dumps(self) -> str:
        self.sort()
        lines = [
            "# mrforbid minimal forbidden subgraph catalog",
            f"# field: {self.field.p}",
            f"# k: {self.k}",
        ]
        for key in sorted(self.provenance):
            lines.append(f"# {key}: {self.provenance[key]}")
        lines.append(f"# members: {len(self.members)}")
        lines += [m.graph6 for m in self.members]
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def loads(cls, text: str) -> "ForbiddenCatalog":
        header: dict[str, str] = {}
        codes = []
        for line in text.splitlines():
            s = line.strip()
            if not s:
                continue
            if s.startswith("#"):
                if ":" in s:
                    key, _, val = s[1:].partition(":")
                    header[key.strip()] = val.strip()
                continue
            codes.append(s)
        if "field" not in header or "k" not in header:
            raise ValueError("catalog header lacks field/k lines")
        members = [CatalogMember.of(canonical_form(graph6_decode(c))) for c in codes]
        if "members" in header and int(header["members"]) != len(members):
            raise ValueError(f"header announces {header['members']} members, file has {len(members)}")
        prov = {k: v for k, v in header.items() if k not in ("field", "k", "members")}
        cat = cls(FieldSpec(int(header["field"])), int(header["k"]), members, prov)
        cat.sort()
        return cat

    @classmethod
    def read(cls, path: str | Path) -> "ForbiddenCatalog":
        return cls.loads(Path(path).read_text())


def find_forbidden(
    field: FieldSpec | int,
    k: int,
    max_n: int,
    budget: int | None = None,
    jobs: int = 1,
    table: RankTable | None = None,
) -> ForbiddenCatalog:
    """All graphs on at most ``max_n`` vertices with mr >= k+1 whose every vertex deletion has mr <= k."""
    f = as_field(field)
    if max_n > MAX_GENERATION:
        raise ValueError(f"max_n is limited to {MAX_GENERATION}")
    table = table or RankTable(f, budget, jobs)
    table.ensure(max_n)
    members = []
    for n in range(1, max_n + 1):
        for cf in table.levels[n].members:
            if table.mr[cf] < k + 1:
                continue
            g = cf.graph()
            if all(d <= k for d in table.deletions(g)):
                members.append(CatalogMember.of(cf))
    cat = ForbiddenCatalog(f, k, members, {"max_n": max_n, "engine": ENGINE_VERSION, "method": "exhaustive"})
    cat.sort()
    return cat


def find_relative_forbidden(
    field: FieldSpec | int,
    k: int,
    pattern: Graph,
    max_n: int,
    budget: int | None = None,
    table: RankTable | None = None,
    sizes: Iterable[int] | None = None,
) -> ForbiddenCatalog:
    """Graphs G with mr >= k+1 and an induced copy of ``pattern`` outside of which every deletion has mr <= k."""
    f = as_field(field)
    if max_n > MAX_GENERATION:
        raise ValueError(f"max_n is limited to {MAX_GENERATION}")
    table = table or RankTable(f, budget)
    table.ensure(max_n)
    members = []
    for n in sizes or range(pattern.n, max_n + 1):
        for cf in table.levels[n].members:
            if table.mr[cf] < k + 1:
                continue
            g = cf.graph()
            if relative_witness(table, k, g, pattern) is not None:
                members.append(CatalogMember.of(cf))
    cat = ForbiddenCatalog(f, k, members, {"max_n": max_n, "engine": ENGINE_VERSION, "pattern": graph6_encode(pattern)})
    cat.sort()
    return cat


def relative_witness(table: RankTable, k: int, g: Graph, pattern: Graph) -> tuple[int, ...] | None:
    """First induced copy of ``pattern`` (lexicographic vertex set) whose complement deletions all have mr <= k."""
    dels: dict[int, int] = {}
    for s in induced_copies(g, pattern):
        ok = True
        for v in range(g.n):
            if v in s:
                continue
            if v not in dels:
                dels[v] = table[delete_vertex(g, v)]
            if dels[v] > k:
                ok = False
                break
        if ok:
            return s
    return None


def ingest_graph6(lines: Iterable[str]) -> list[CanonicalForm]:
    """Canonical forms of an external graph6 stream (for cross-validation of generated levels)."""
    return canonical_filter(read_graph6_lines(lines))


# ---------------------------------------------------------------------------
# decision procedure and report


class CatalogIndex:
    """Subset lookup of catalog members inside a host graph."""

    def __init__(self, catalog: ForbiddenCatalog):
        self.catalog = catalog
        self.forms = catalog.canonical_set()
        self.shapes = {(m.n, m.canonical.graph().num_edges()) for m in catalog.members}
        self.sizes = sorted({m.n for m in catalog.members})

    def find(self, g: Graph) -> tuple[int, ...] | None:
        """A vertex set inducing some catalog member, or None."""
        if g.n > 10:
            raise ValueError("induced-subgraph search is limited to 10 vertices")
        for size in self.sizes:
            if size > g.n:
                break
            for s in combinations(range(g.n), size):
                mask = sum(1 << v for v in s)
                edges = sum((g.adj[v] & mask).bit_count() for v in s) // 2
                if (size, edges) not in self.shapes:
                    continue
                if canonical_form(induced_subgraph(g, s)) in self.forms:
                    return s
        return None


def is_mr_le_3(g: Graph, catalog: ForbiddenCatalog | CatalogIndex) -> bool:
    """mr(GF(2), G) <= 3 iff no member of F_4(GF(2)) is induced in G."""
    index = catalog if isinstance(catalog, CatalogIndex) else CatalogIndex(catalog)
    return index.find(g) is None


PUBLISHED_CONNECTIVITY_CLAIMS = {
    "introduction": {"connectivity_at_most_one": 29, "field_universal": 21},
    "summary": {"disconnected": 8, "cut_vertex": 22, "connectivity_at_most_one": 30, "field_universal": 22},
}


def catalog_report(catalog: ForbiddenCatalog, sharp_n: int = 8) -> dict:
    by_n = Counter(m.n for m in catalog.members)
    by_conn = Counter(m.connectivity.value for m in catalog.members)
    disc = by_conn.get(Connectivity.DISCONNECTED.value, 0)
    cut = by_conn.get(Connectivity.HAS_CUT_VERTEX.value, 0)
    max_n = max(by_n) if by_n else 0
    return {
        "schema": 1,
        "field": catalog.field.p,
        "k": catalog.k,
        "members": len(catalog),
        "by_vertices": {str(n): by_n[n] for n in sorted(by_n)},
        "by_connectivity": {c.value: by_conn.get(c.value, 0) for c in Connectivity},
        "max_vertices": max_n,
        "has_member_with_max_bound": by_n.get(sharp_n, 0) > 0,
        "connectivity_split": {
            "disconnected": disc,
            "cut_vertex": cut,
            "connectivity_at_most_one": disc + cut,
            "matches_introduction_count": disc + cut == PUBLISHED_CONNECTIVITY_CLAIMS["introduction"]["connectivity_at_most_one"],
            "matches_summary_counts": (disc, cut)
            == (
                PUBLISHED_CONNECTIVITY_CLAIMS["summary"]["disconnected"],
                PUBLISHED_CONNECTIVITY_CLAIMS["summary"]["cut_vertex"],
            ),
            "published_claims": PUBLISHED_CONNECTIVITY_CLAIMS,
        },
        "graph6": [m.graph6 for m in catalog.members],
        "member_connectivity": [m.connectivity.value for m in catalog.members],
    }
