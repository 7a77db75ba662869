"""Minimum rank over S(F, G) and the rank-increase machinery of an embedded pattern.

S(F, G) is the set of symmetric matrices over F whose off-diagonal nonzero
pattern is the edge set of G (diagonal free).  Everything here is exact and
exhaustive; enumeration refuses to start when it would exceed the budget.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product
from typing import Iterator, Sequence

from .gflin import (
    GF2,
    FieldSpec,
    FMatrix,
    FVector,
    as_field,
    bordered_rank,
    col_space_contains,
    gf2_rank,
    modp_rank,
    rank,
    _rref,
)
from .graphs import (
    Graph,
    components,
    cut_vertices,
    induced_by_order,
    induced_copies,
    induced_subgraph,
    isomorphism_map,
    mask_to_list,
)

DEFAULT_BUDGET = int(os.environ.get("MRFORBID_BUDGET", 10**8))


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "matrices"):
        super().__init__(f"enumeration needs {required} {what}, budget is {budget}")
        self.required = required
        self.budget = budget


def count_S(field: FieldSpec | int, g: Graph) -> int:
    p = as_field(field).p
    return (p - 1) ** g.num_edges() * p ** g.n


def _check_budget(required: int, budget: int | None) -> None:
    b = DEFAULT_BUDGET if budget is None else budget
    if required > b:
        raise BudgetExceeded(required, b)


def enumerate_S(field: FieldSpec | int, g: Graph, budget: int | None = None) -> Iterator[FMatrix]:
    """Every matrix of S(F, G) once.

    Edge values (base p-1 counter over the sorted edge list) form the outer
    loop, diagonal entries (base p counter) the inner loop; the last
    coordinate varies fastest in both.
    """
    f = as_field(field)
    _check_budget(count_S(f, g), budget)
    edges = g.edges()
    n = g.n
    for evals in product(range(1, f.p), repeat=len(edges)):
        base = [[0] * n for _ in range(n)]
        for (i, j), x in zip(edges, evals):
            base[i][j] = base[j][i] = x
        for diag in product(range(f.p), repeat=n):
            for i, d in enumerate(diag):
                base[i][i] = d
            yield FMatrix.of(f, base)


def _gf2_rows(g: Graph, diag: int) -> list[int]:
    return [r | (((diag >> i) & 1) << i) for i, r in enumerate(g.adj)]


def _spanning_forest(g: Graph) -> set[tuple[int, int]]:
    seen = 0
    tree: set[tuple[int, int]] = set()
    for root in range(g.n):
        if (seen >> root) & 1:
            continue
        seen |= 1 << root
        stack = [root]
        while stack:
            u = stack.pop()
            for w in mask_to_list(g.adj[u] & ~seen):
                seen |= 1 << w
                tree.add((min(u, w), max(u, w)))
                stack.append(w)
    return tree


def reduced_count(field: FieldSpec | int, g: Graph) -> int:
    """Matrices visited by ``min_rank``: one per diagonal-congruence normal form."""
    p = as_field(field).p
    if p == 2:
        return 2 ** g.n
    free = g.num_edges() - len(_spanning_forest(g))
    return (p - 1) ** free * p ** g.n


def _normal_forms(f: FieldSpec, g: Graph) -> Iterator[list[list[int]]]:
    # D A D with D diagonal invertible preserves rank and pattern and can set
    # every spanning-forest edge to 1, so only the remaining edges vary.
    n = g.n
    tree = _spanning_forest(g)
    free = [e for e in g.edges() if e not in tree]
    base = [[0] * n for _ in range(n)]
    for i, j in tree:
        base[i][j] = base[j][i] = 1
    for evals in product(range(1, f.p), repeat=len(free)):
        for (i, j), x in zip(free, evals):
            base[i][j] = base[j][i] = x
        for diag in product(range(f.p), repeat=n):
            for i, d in enumerate(diag):
                base[i][i] = d
            yield base


def structural_lower_bound(g: Graph) -> int:
    """Field-independent lower bound: per component 0 (one vertex), 1 (complete) or 2 (contains an induced P3)."""
    total = 0
    for c in components(g):
        size = c.bit_count()
        if size == 1:
            continue
        complete = all((g.adj[v] | (1 << v)) & c == c for v in mask_to_list(c))
        total += 1 if complete else 2
    return total


def min_rank(
    field: FieldSpec | int,
    g: Graph,
    budget: int | None = None,
    lower_bound: int | None = None,
    stop_at: int | None = None,
) -> int:
    """mr(F, G) by exhaustive search.

    ``lower_bound`` is a proven bound supplied by the caller; the search
    stops as soon as it is attained.  ``stop_at`` turns the call into a
    threshold query: the search stops once some matrix has rank at most
    ``stop_at`` and the returned value is then only an upper bound.
    """
    f = as_field(field)
    n = g.n
    if n == 0 or g.num_edges() == 0:
        return 0
    _check_budget(reduced_count(f, g), budget)
    floor = max(structural_lower_bound(g), lower_bound or 0)
    if stop_at is not None:
        floor = max(floor, stop_at)
    best = n
    if f.p == 2:
        adj = g.adj
        for diag in range(1 << n):
            r = gf2_rank([row | (((diag >> i) & 1) << i) for i, row in enumerate(adj)])
            if r < best:
                best = r
                if best <= floor:
                    break
        return best
    for m in _normal_forms(f, g):
        r = modp_rank(m, f.p)
        if r < best:
            best = r
            if best <= floor:
                break
    return best


# ---------------------------------------------------------------------------
# attaining matrices


def colspace_key(m: FMatrix) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon basis of col(m); equal keys iff equal column spaces."""
    red, piv = _rref([list(c) for c in zip(*m.entries)], m.field.p, m.rows)
    return tuple(tuple(r) for r in red[: len(piv)])


@dataclass(frozen=True)
class MRSet:
    field: FieldSpec
    graph: Graph
    mr: int
    matrices: tuple[FMatrix, ...]
    classes: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.matrices)

    def class_of(self, index: int) -> int:
        for c, members in enumerate(self.classes):
            if index in members:
                return c
        raise IndexError(index)

    def class_masks(self) -> list[int]:
        return [sum(1 << i for i in c) for c in self.classes]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.matrices)) - 1


def min_rank_set(field: FieldSpec | int, g: Graph, budget: int | None = None) -> MRSet:
    """MR(F, G) and its partition into column-space classes.

    Matrices are listed in enumeration order; classes are ordered by their
    first member.
    """
    f = as_field(field)
    found: list[FMatrix] = []
    best = g.n + 1
    if f.p == 2:
        _check_budget(2 ** g.n, budget)
        for diag in range(1 << g.n):
            rows = _gf2_rows(g, diag)
            r = gf2_rank(rows)
            if r < best:
                best, found = r, []
            if r == best:
                found.append(FMatrix.from_bitrows(rows, g.n))
    else:
        for m in enumerate_S(f, g, budget):
            r = rank(m)
            if r < best:
                best, found = r, []
            if r == best:
                found.append(m)
    if g.n == 0:
        return MRSet(f, g, 0, (), ())
    groups: dict[tuple, list[int]] = {}
    for i, m in enumerate(found):
        groups.setdefault(colspace_key(m), []).append(i)
    classes = tuple(sorted((tuple(v) for v in groups.values()), key=lambda c: c[0]))
    return MRSet(f, g, best, tuple(found), classes)


# ---------------------------------------------------------------------------
# embeddings, weights, tables


@dataclass(frozen=True)
class Embedding:
    """An induced copy of ``pattern`` in ``host``: pattern vertex k sits at host vertex ``map[k]``."""

    host: Graph
    pattern: Graph
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.map)) != len(self.map) or len(self.map) != self.pattern.n:
            raise ValueError("embedding map must be injective on the pattern's vertices")
        if induced_by_order(self.host, self.map) != self.pattern:
            raise ValueError("host does not induce the pattern on the mapped vertices")

    @property
    def outside(self) -> tuple[int, ...]:
        used = set(self.map)
        return tuple(v for v in range(self.host.n) if v not in used)

    @classmethod
    def all(cls, host: Graph, pattern: Graph) -> Iterator["Embedding"]:
        """One embedding per induced copy, copies in lexicographic vertex-set order."""
        for s in induced_copies(host, pattern):
            sub = induced_subgraph(host, s)
            phi = isomorphism_map(pattern, sub)
            yield cls(host, pattern, tuple(s[phi[k]] for k in range(pattern.n)))

    @classmethod
    def first(cls, host: Graph, pattern: Graph) -> "Embedding | None":
        return next(cls.all(host, pattern), None)


def vertex_weight(emb: Embedding, v: int, field: FieldSpec = GF2) -> FVector:
    return FVector(field, tuple((emb.host.adj[v] >> h) & 1 for h in emb.map))


def edge_weight(emb: Embedding, u: int, v: int) -> int:
    return int(emb.host.has_edge(u, v))


def weights(emb: Embedding, field: FieldSpec = GF2) -> tuple[dict[int, FVector], dict[tuple[int, int], int]]:
    """Vertex weights for G-H (entries ordered by the pattern's labels) and pair weights within G-H."""
    out = emb.outside
    vw = {v: vertex_weight(emb, v, field) for v in out}
    ew = {(u, v): edge_weight(emb, u, v) for u, v in combinations(out, 2)}
    return vw, ew


class NotInColumnSpace(ValueError):
    def __init__(self, index: int):
        super().__init__(f"weight {index} is not in the column space")
        self.index = index


def rank_preserving_table(m: FMatrix, vecs: Sequence[FVector | Sequence[int]]) -> FMatrix:
    """P = A^T M A where column i of A solves M a_i = vecs[i]."""
    sols = []
    for i, w in enumerate(vecs):
        ok, a = col_space_contains(m, w)
        if not ok:
            raise NotInColumnSpace(i)
        sols.append(a.entries)
    p = m.field.p
    mas = [m.matvec(a).entries for a in sols]
    k = len(sols)
    return FMatrix.of(
        m.field, [[sum(x * y for x, y in zip(sols[i], mas[j])) % p for j in range(k)] for i in range(k)]
    )


def vertex_increases(m: FMatrix, w: FVector) -> bool:
    return not col_space_contains(m, w)[0]


def pair_increases(m: FMatrix, wu: FVector, wv: FVector, wuv: int, base_rank: int) -> bool:
    return bordered_rank(m, wu, wv, wuv) > base_rank


# ---------------------------------------------------------------------------
# increase profiles and optimal triples


def _mask(indices) -> int:
    return reduce(lambda acc, i: acc | (1 << i), indices, 0)


def _indices(mask: int) -> frozenset[int]:
    return frozenset(mask_to_list(mask))


@dataclass
class IncreaseProfile:
    """Rank-increase sets for every vertex and vertex pair of G-H.

    I-sets are stored as bitmasks over indices into ``mrset.matrices``.
    """

    embedding: Embedding
    mrset: MRSet
    vertex_weights: dict[int, FVector]
    pair_weights: dict[tuple[int, int], int]
    I_v: dict[int, int]
    I_uv: dict[tuple[int, int], int]

    @property
    def outside(self) -> tuple[int, ...]:
        return self.embedding.outside

    @property
    def full(self) -> int:
        return self.mrset.full_mask

    def I_vertices(self, vs) -> int:
        return reduce(lambda acc, v: acc | self.I_v[v], vs, 0)

    def I_pairs(self, pairs) -> int:
        return reduce(lambda acc, e: acc | self.I_uv[tuple(sorted(e))], pairs, 0)

    def class_level(self, mask: int) -> frozenset[int]:
        """Classes entirely contained in ``mask``."""
        return frozenset(c for c, cm in enumerate(self.mrset.class_masks()) if cm & mask == cm)

    def bar_I(self, vs) -> frozenset[int]:
        return self.class_level(self.I_vertices(vs))

    def is_union_of_classes(self, mask: int) -> bool:
        return all(cm & mask in (0, cm) for cm in self.mrset.class_masks())

    def sets(self, mask: int) -> list[int]:
        return sorted(_indices(mask))


def increase_profile(emb: Embedding, mrset: MRSet) -> IncreaseProfile:
    if mrset.graph != emb.pattern:
        raise ValueError("MR set was computed for a different pattern labeling")
    vw, ew = weights(emb, mrset.field)
    iv: dict[int, int] = {}
    iuv: dict[tuple[int, int], int] = {}
    for idx, m in enumerate(mrset.matrices):
        r = mrset.mr
        for v, w in vw.items():
            if not col_space_contains(m, w)[0]:
                iv[v] = iv.get(v, 0) | (1 << idx)
        for (u, v), c in ew.items():
            if bordered_rank(m, vw[u], vw[v], c) > r:
                iuv[(u, v)] = iuv.get((u, v), 0) | (1 << idx)
    for v in vw:
        iv.setdefault(v, 0)
    for e in ew:
        iuv.setdefault(e, 0)
    return IncreaseProfile(emb, mrset, vw, ew, iv, iuv)


@dataclass(frozen=True)
class OptimalTriple:
    R: tuple[tuple[int, int], ...]
    S: tuple[int, ...]
    T: tuple[int, ...]

    @property
    def objective(self) -> tuple[int, int, int]:
        return (2 * len(self.R) + len(self.T), len(self.R), len(self.S))

    def uses_nonedges(self, profile: IncreaseProfile) -> bool:
        return any(profile.pair_weights[e] == 0 for e in self.R)


MAX_OUTSIDE = 6


def find_optimal_triple(emb: Embedding, mrset: MRSet, profile: IncreaseProfile | None = None) -> OptimalTriple | None:
    """Lexicographically minimal (2|R|+|T|, |R|, |S|) cover of MR(H), or None.

    R ranges over all vertex pairs of G-H (non-edges carry weight 0), T over
    vertex subsets.  Ties go to the smallest (sorted R, sorted T).  ``None``
    means every pair and vertex is rank-preserving for some M, i.e.
    mr(G) = mr(H).
    """
    out = emb.outside
    if len(out) > MAX_OUTSIDE:
        raise ValueError(f"G-H has {len(out)} vertices; triple search is limited to {MAX_OUTSIDE}")
    prof = profile or increase_profile(emb, mrset)
    full = prof.full
    pairs = sorted(prof.I_uv)
    if (prof.I_pairs(pairs) | prof.I_vertices(out)) != full:
        return None
    max_cost = 2 * len(pairs) + len(out)
    for cost in range(0, max_cost + 1):
        best: tuple | None = None
        for r in range(0, cost // 2 + 1):
            t = cost - 2 * r
            if r > len(pairs) or t > len(out):
                continue
            for R in combinations(pairs, r):
                ir = prof.I_pairs(R)
                S = tuple(sorted({x for e in R for x in e}))
                for T in combinations(out, t):
                    if (ir | prof.I_vertices(T)) == full:
                        key = (r, len(S), R, T)
                        if best is None or key < best:
                            best = key
            if best is not None:
                # smaller |R| at the same cost is already preferred
                break
        if best is not None:
            r, _, R, T = best
            return OptimalTriple(R, tuple(sorted({x for e in R for x in e})), T)
    return None


def triple_conditions(prof: IncreaseProfile, tri: OptimalTriple) -> dict[str, bool]:
    """Checks that every optimal triple must satisfy."""
    full = prof.full
    iS = prof.I_vertices(tri.S)
    iT = prof.I_vertices(tri.T)
    iR = prof.I_pairs(tri.R)
    res = {
        "covers": (iR | iT) == full,
        "vertex_needed": all(
            prof.I_v[v] & ~(prof.I_vertices([w for w in tri.T if w != v]) | iS) for v in tri.T
        ),
        "pair_needed": all(
            prof.I_uv[e] & ~(prof.I_pairs([x for x in tri.R if x != e]) | iS | iT) for e in tri.R
        ),
        "S_T_disjoint": not set(tri.S) & set(tri.T),
        "T_bound": len(tri.T) <= len(prof.class_level(iT) - prof.class_level(iS)),
        "R_bound": len(tri.R) <= bin(iR & ~(iS | iT)).count("1"),
    }
    return res


def structural_properties(prof: IncreaseProfile, tri: OptimalTriple, in_relative_family: bool) -> dict[str, bool | None]:
    """Properties P1-P4 for a triple; P3/P4 are None when their hypotheses fail."""
    iS = prof.I_vertices(tri.S)
    iT = prof.I_vertices(tri.T)
    iR = prof.I_pairs(tri.R)
    nclasses = len(prof.mrset.classes)
    out: dict[str, bool | None] = {
        "P1": prof.is_union_of_classes(iS) and prof.is_union_of_classes(iT),
        "P2": iS & ~iR == 0,
    }
    applies = in_relative_family and len(prof.outside) >= nclasses + 1 and (iR | iT) == prof.full
    if applies:
        out["P3"] = len(prof.class_level(iS) | prof.class_level(iT)) != nclasses
        out["P4"] = any(cm & iR == cm and cm & iS == 0 for cm in prof.mrset.class_masks())
    else:
        out["P3"] = out["P4"] = None
    return out


def edge_incidence_holds(prof: IncreaseProfile) -> bool:
    """A rank-increasing vertex makes every pair through it rank-increasing."""
    return all(prof.I_v[u] & ~prof.I_uv[(u, v)] == 0 and prof.I_v[v] & ~prof.I_uv[(u, v)] == 0 for u, v in prof.I_uv)


# ---------------------------------------------------------------------------
# cut-vertex reduction


def mr_via_cut_vertex(field: FieldSpec | int, g: Graph, budget: int | None = None) -> int:
    """mr(F, G) by splitting at components and cut vertices.

    Disconnected graphs sum over components.  At the lowest-indexed cut
    vertex v with branches G_1..G_k (each containing v),
    mr = min(sum mr(G_i), sum mr(G_i - v) + 2).  Only blocks without a cut
    vertex are searched exhaustively.
    """
    f = as_field(field)
    memo: dict[Graph, int] = {}

    def solve(h: Graph) -> int:
        if h in memo:
            return memo[h]
        comps = components(h)
        if h.n == 0:
            val = 0
        elif len(comps) > 1:
            val = sum(solve(induced_subgraph(h, mask_to_list(c))) for c in comps)
        else:
            cuts = cut_vertices(h)
            if not cuts:
                val = min_rank(f, h, budget)
            else:
                v = cuts[0]
                rest = ((1 << h.n) - 1) & ~(1 << v)
                branches = [mask_to_list(c | (1 << v)) for c in components(h, rest)]
                whole = 0
                cut = 0
                for verts in branches:
                    piece = induced_subgraph(h, verts)
                    whole += solve(piece)
                    cut += solve(induced_subgraph(h, [w for w in verts if w != v]))
                val = min(whole, cut + 2)
        memo[h] = val
        return val

    return solve(g)


def mr_method(field: FieldSpec | int, g: Graph) -> str:
    """How ``mr_via_cut_vertex`` treats the top level of ``g``."""
    if len(components(g)) > 1:
        return "component sum"
    if cut_vertices(g):
        return "cut-vertex decomposition"
    return "brute force"
