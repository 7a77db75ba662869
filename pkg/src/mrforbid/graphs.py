"""Simple undirected graphs on at most 16 vertices.

Adjacency is stored as one bitmask per vertex.  Named constructors use the
0-indexed version of the labelings under which the minimum-rank matrices of
the rank-3 forbidden graphs are usually written down (vertex ``i`` here is
vertex ``i + 1`` there).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 16
MAX_CANONICAL = 10


class GraphFormatError(ValueError):
    """Malformed or unsupported graph6 input."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"graphs are limited to {MAX_VERTICES} vertices, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {i} has bits beyond vertex {self.n - 1}")
            if (row >> i) & 1:
                raise ValueError(f"loop at vertex {i}")
            for j in range(self.n):
                if (row >> j) & 1 and not (self.adj[j] >> i) & 1:
                    raise ValueError(f"asymmetric adjacency at {i},{j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], one_indexed: bool = False) -> "Graph":
        rows = [0] * n
        off = 1 if one_indexed else 0
        for u, v in edges:
            u -= off
            v -= off
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge ({u}, {v}) for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if (self.adj[i] >> j) & 1]

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return [j for j in range(self.n) if (self.adj[v] >> j) & 1]

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return graph6_encode(self)


# ---------------------------------------------------------------------------
# graph6


def graph6_encode(g: Graph) -> str:
    n = g.n
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append((g.adj[i] >> j) & 1)
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def graph6_decode(line: str) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if s.startswith(">>sparse6<<") or s.startswith(":"):
        raise GraphFormatError("sparse6 input is not supported; use graph6")
    if s.startswith(">>digraph6<<") or s.startswith("&"):
        raise GraphFormatError("digraph6 input is not supported; use graph6")
    if not s:
        raise GraphFormatError("empty graph6 line")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"byte {ord(ch)} at position {pos} outside [63,126]")
    n = ord(s[0]) - 63
    if n > MAX_VERTICES:
        raise GraphFormatError(f"n={n} exceeds the {MAX_VERTICES}-vertex limit")
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = s[1:]
    if len(body) != nbytes:
        kind = "truncated" if len(body) < nbytes else "overlong"
        raise GraphFormatError(f"{kind} bit field: expected {nbytes} bytes for n={n}, got {len(body)}")
    bits: list[int] = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise GraphFormatError("non-zero padding bits")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Decode a graph6 stream, skipping blank lines and ``#`` comments."""
    for line in lines:
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        yield graph6_decode(s)


# ---------------------------------------------------------------------------
# constructors


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    part = []
    for k, s in enumerate(sizes):
        part += [k] * s
    n = len(part)
    return Graph.from_edges(n, [(i, j) for i, j in combinations(range(n), 2) if part[i] != part[j]])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, g.adj + tuple(r << shift for r in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    return Graph(g.n + h.n, tuple(r | hmask for r in g.adj) + tuple((r << g.n) | gmask for r in h.adj))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(g.adj)))


def m_copies(m: int, g: Graph) -> Graph:
    out = Graph.empty(0)
    for _ in range(m):
        out = disjoint_union(out, g)
    return out


def full_house() -> Graph:
    return Graph.from_edges(5, [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)], one_indexed=True)


def dart() -> Graph:
    return Graph.from_edges(5, [(1, 2), (2, 3), (2, 4), (2, 5), (3, 4), (4, 5)], one_indexed=True)


def ltimes() -> Graph:
    return Graph.from_edges(5, [(1, 2), (1, 3), (1, 4), (1, 5), (4, 5)], one_indexed=True)


def p3_join_p3() -> Graph:
    # non-edges are 15 and 26; 3 and 4 are dominating
    return complement(Graph.from_edges(6, [(1, 5), (2, 6)], one_indexed=True))


def p3_union_k2() -> Graph:
    return disjoint_union(path(3), complete(2))


def three_k2() -> Graph:
    return m_copies(3, complete(2))


LADDER_LABELS = ("u", "v", "w", "x", "y", "z")


def ladder_p3xp2() -> Graph:
    """P3 x P2 with vertices u, v, w, x, y, z = 0..5.

    Sides are w-y-z and u-v-x with rungs wu, yv, zx, so G[{u,v,w,x}] and
    G[{u,v,y,z}] are induced P4's, y and v are the degree-3 vertices, and
    deleting w or x leaves a 4-cycle with a pendant vertex.
    """
    u, v, w, x, y, z = range(6)
    return Graph.from_edges(6, [(w, y), (y, z), (u, v), (v, x), (w, u), (y, v), (z, x)])


def rank_example(uv_edge: bool) -> Graph:
    """P4 on 0..3 plus u=4 adjacent to 0,1,3 and v=5 adjacent to 0,2.

    ``uv_edge`` selects whether u and v are adjacent.
    """
    edges = [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 3), (5, 0), (5, 2)]
    if uv_edge:
        edges.append((4, 5))
    return Graph.from_edges(6, edges)


def g1_mr3_class() -> Graph:
    """Complement of 2P3."""
    return complement(m_copies(2, path(3)))


def g2_mr3_class() -> Graph:
    """Complement of P3 + K2 + K1."""
    return complement(disjoint_union(p3_union_k2(), Graph.empty(1)))


def graph38() -> Graph:
    """Two triangles and two pendant edges glued at vertex 0."""
    tri = complete(3)
    k2 = complete(2)
    return vertex_sum_many([(tri, 0), (tri, 0), (k2, 0), (k2, 0)])


def graph39_core() -> Graph:
    """Graph 39 minus its pendant vertex; deleting vertex 0 leaves the ltimes graph."""
    return Graph.from_edges(
        6, [(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6), (5, 6)], one_indexed=True
    )


def graph39() -> Graph:
    return vertex_sum(graph39_core(), 0, complete(2), 0)


def vertex_sum(g: Graph, u: int, h: Graph, v: int) -> Graph:
    """Glue ``g`` and ``h`` by identifying ``g``'s vertex ``u`` with ``h``'s vertex ``v``.

    The result keeps ``g``'s labels; ``h``'s other vertices follow in order.
    """
    if g.n < 2 or h.n < 2:
        raise ValueError("vertex sums need both graphs on at least two vertices")
    if not 0 <= u < g.n or not 0 <= v < h.n:
        raise ValueError("invalid vertex index")
    rest = [w for w in range(h.n) if w != v]
    new_index = {w: g.n + k for k, w in enumerate(rest)}
    new_index[v] = u
    edges = g.edges() + [(new_index[a], new_index[b]) for a, b in h.edges()]
    return Graph.from_edges(g.n + h.n - 1, edges)


def vertex_sum_many(parts: Sequence[tuple[Graph, int]]) -> Graph:
    """Vertex sum of several graphs at one shared vertex (which becomes the first part's vertex)."""
    if len(parts) < 2:
        raise ValueError("need at least two graphs")
    g, u = parts[0]
    for h, v in parts[1:]:
        g = vertex_sum(g, u, h, v)
    return g


NAMED_GRAPHS = {
    "full_house": full_house,
    "dart": dart,
    "ltimes": ltimes,
    "p3_join_p3": p3_join_p3,
    "p3_union_k2": p3_union_k2,
    "3k2": three_k2,
    "ladder": ladder_p3xp2,
    "rank_example_a": lambda: rank_example(False),
    "rank_example_b": lambda: rank_example(True),
    "g1": g1_mr3_class,
    "g2": g2_mr3_class,
    "graph38": graph38,
    "graph39": graph39,
    "graph39_core": graph39_core,
}


def named_graph(name: str) -> Graph:
    """Look up a named graph.

    Besides the fixed names in ``NAMED_GRAPHS`` this accepts ``P<n>``,
    ``K<n>``, ``C<n>``, ``E<n>`` (edgeless), ``<m>K<n>`` and
    ``K<a>,<b>,...`` for complete multipartite graphs.
    """
    key = name.strip()
    low = key.lower()
    if low in NAMED_GRAPHS:
        return NAMED_GRAPHS[low]()
    import re

    if m := re.fullmatch(r"[pP](\d+)", key):
        return path(int(m.group(1)))
    if m := re.fullmatch(r"[cC](\d+)", key):
        return cycle(int(m.group(1)))
    if m := re.fullmatch(r"[eE](\d+)", key):
        return Graph.empty(int(m.group(1)))
    if m := re.fullmatch(r"(\d*)[kK](\d+)", key):
        copies = int(m.group(1)) if m.group(1) else 1
        return m_copies(copies, complete(int(m.group(2))))
    if m := re.fullmatch(r"[kK](\d+(?:,\d+)+)", key):
        return complete_multipartite([int(x) for x in m.group(1).split(",")])
    raise KeyError(f"unknown graph name {name!r}")


# ---------------------------------------------------------------------------
# structure


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    verts = sorted(set(s))
    if any(not 0 <= v < g.n for v in verts):
        raise ValueError("vertex out of range")
    rows = []
    for v in verts:
        r = g.adj[v]
        rows.append(sum(1 << k for k, w in enumerate(verts) if (r >> w) & 1))
    return Graph(len(verts), tuple(rows))


def induced_by_order(g: Graph, order: Sequence[int]) -> Graph:
    """Induced subgraph with vertex ``k`` of the result being ``order[k]``."""
    rows = []
    for v in order:
        r = g.adj[v]
        rows.append(sum(1 << k for k, w in enumerate(order) if (r >> w) & 1))
    return Graph(len(order), tuple(rows))


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise ValueError("vertex out of range")
    return induced_subgraph(g, (w for w in range(g.n) if w != v))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``i`` of ``g`` renamed ``perm[i]``."""
    rows = [0] * g.n
    for i in range(g.n):
        r = g.adj[i]
        rows[perm[i]] = sum(1 << perm[j] for j in range(g.n) if (r >> j) & 1)
    return Graph(g.n, tuple(rows))


def components(g: Graph, mask: int | None = None) -> list[int]:
    """Connected components as vertex bitmasks, restricted to ``mask``."""
    remaining = (1 << g.n) - 1 if mask is None else mask
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= g.adj[low.bit_length() - 1]
                f ^= low
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps


def mask_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def cut_vertices(g: Graph) -> list[int]:
    """Vertices whose removal increases the number of components."""
    base = len(components(g))
    full = (1 << g.n) - 1
    return [v for v in range(g.n) if g.n > 2 and len(components(g, full & ~(1 << v))) > base]


class Connectivity(str, Enum):
    DISCONNECTED = "disconnected"
    HAS_CUT_VERTEX = "has_cut_vertex"
    TWO_CONNECTED = "two_connected"


def connectivity_class(g: Graph) -> Connectivity:
    """Trichotomy by component count and cut vertices.

    K1 and K2 have no cut vertex and are reported as two-connected.
    """
    if len(components(g)) > 1:
        return Connectivity.DISCONNECTED
    if cut_vertices(g):
        return Connectivity.HAS_CUT_VERTEX
    return Connectivity.TWO_CONNECTED


# ---------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    code: bytes

    def graph(self) -> Graph:
        """The canonically labeled representative."""
        n = self.n
        value = int.from_bytes(self.code, "big")
        total = n * (n - 1) // 2
        rows = [0] * n
        k = total - 1
        for i in range(n):
            for j in range(i + 1, n):
                if (value >> k) & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                k -= 1
        return Graph(n, tuple(rows))

    def graph6(self) -> str:
        return graph6_encode(self.graph())


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbour counts into every cell until stable.

    Split pieces are ordered by their count signature, which keeps the
    ordered partition invariant under relabeling.
    """
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                r = adj[v]
                groups.setdefault(tuple((r & m).bit_count() for m in masks), []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                changed = True
                out.extend(groups[k] for k in sorted(groups))
        cells = out
        if not changed:
            return cells


def _code(adj: Sequence[int], order: Sequence[int]) -> int:
    n = len(order)
    code = 0
    for i in range(n):
        r = adj[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | ((r >> order[j]) & 1)
    return code


def _twin_reps(adj: Sequence[int], cell: list[int]) -> list[int]:
    reps: list[int] = []
    for v in cell:
        bv = 1 << v
        for u in reps:
            bu = 1 << u
            if adj[u] & ~bv == adj[v] & ~bu:
                break
        else:
            reps.append(v)
    return reps


def canonical_order(g: Graph) -> list[int]:
    """A vertex order whose relabeled upper triangle is the canonical code.

    Individualize-and-refine search over the permutations admitted by the
    refined ordered partition; the lexicographically smallest row-major
    upper-triangle bit string wins.  Twins in a cell are interchangeable, so
    only one of each twin class is individualized.
    """
    if g.n > MAX_CANONICAL:
        raise ValueError(f"canonical forms are limited to {MAX_CANONICAL} vertices")
    adj = g.adj
    best_code = -1
    best_order: list[int] = []
    stack = [[list(range(g.n))]] if g.n else []
    if not g.n:
        return []
    while stack:
        cells = _refine(adj, stack.pop())
        if len(cells) == g.n:
            order = [c[0] for c in cells]
            code = _code(adj, order)
            if best_code < 0 or code < best_code:
                best_code, best_order = code, order
            continue
        idx = min((k for k, c in enumerate(cells) if len(c) > 1), key=lambda k: len(cells[k]))
        cell = cells[idx]
        for v in reversed(_twin_reps(adj, cell)):
            stack.append(cells[:idx] + [[v], [w for w in cell if w != v]] + cells[idx + 1:])
    return best_order


def canonical_form(g: Graph) -> CanonicalForm:
    n = g.n
    order = canonical_order(g)
    code = _code(g.adj, order) if n else 0
    nbytes = max(1, -(-(n * (n - 1) // 2) // 8))
    return CanonicalForm(n, code.to_bytes(nbytes, "big"))


def canonical_graph(g: Graph) -> Graph:
    return canonical_form(g).graph()


def _quick_invariant(g: Graph) -> tuple:
    return (g.n, g.num_edges(), tuple(sorted(g.degrees())))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n > MAX_CANONICAL or h.n > MAX_CANONICAL:
        raise ValueError(f"isomorphism testing is limited to {MAX_CANONICAL} vertices")
    if _quick_invariant(g) != _quick_invariant(h):
        return False
    return canonical_form(g) == canonical_form(h)


def induced_copies(g: Graph, h: Graph) -> Iterator[tuple[int, ...]]:
    """Vertex sets S (sorted, lexicographic order) with G[S] isomorphic to H."""
    if g.n > MAX_CANONICAL:
        raise ValueError(f"induced-subgraph search is limited to {MAX_CANONICAL} vertices")
    k = h.n
    if k > g.n:
        return
    target_edges = h.num_edges()
    target_degs = sorted(h.degrees())
    target = canonical_form(h)
    gdeg = g.degrees()
    min_needed = target_degs[-1] if target_degs else 0
    for s in combinations(range(g.n), k):
        # some vertex must carry the largest degree of H
        if k and max(gdeg[v] for v in s) < min_needed:
            continue
        mask = sum(1 << v for v in s)
        degs = sorted((g.adj[v] & mask).bit_count() for v in s)
        if degs != target_degs or sum(degs) != 2 * target_edges:
            continue
        if canonical_form(induced_subgraph(g, s)) == target:
            yield s


def contains_induced(g: Graph, h: Graph) -> bool:
    if h.n > g.n:
        raise ValueError("pattern has more vertices than host")
    return next(induced_copies(g, h), None) is not None


def isomorphism_map(h: Graph, g_sub: Graph) -> list[int]:
    """A bijection phi with phi(H) == g_sub (both on the same vertex count)."""
    oh = canonical_order(h)
    og = canonical_order(g_sub)
    if _code(h.adj, oh) != _code(g_sub.adj, og):
        raise ValueError("graphs are not isomorphic")
    phi = [0] * h.n
    for a, b in zip(oh, og):
        phi[a] = b
    return phi
