import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrforbid.graphs import (
    Connectivity,
    Graph,
    GraphFormatError,
    canonical_form,
    complement,
    complete,
    connectivity_class,
    contains_induced,
    cut_vertices,
    dart,
    delete_vertex,
    disjoint_union,
    full_house,
    graph6_decode,
    graph6_encode,
    induced_copies,
    induced_subgraph,
    is_isomorphic,
    isomorphism_map,
    join,
    ladder_p3xp2,
    ltimes,
    named_graph,
    path,
    read_graph6_lines,
    relabel,
    three_k2,
    vertex_sum,
)


@st.composite
def graphs(draw, max_n=9, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def random_graph(rng, n, p=0.5):
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


# graph6 -------------------------------------------------------------------


def test_graph6_known_codes():
    assert graph6_encode(complete(2)) == "A_"
    assert graph6_encode(path(3)) == "Bg"
    assert graph6_encode(Graph.empty(0)) == "?"
    assert graph6_decode("Bg") == path(3)


def test_graph6_matches_networkx():
    rng = random.Random(11)
    for _ in range(200):
        g = random_graph(rng, rng.randint(0, 16))
        assert graph6_encode(g) == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


def test_graph6_round_trip_1000():
    rng = random.Random(5)
    for _ in range(1000):
        g = random_graph(rng, rng.randint(0, 16), rng.random())
        assert graph6_decode(graph6_encode(g)) == g


@pytest.mark.parametrize(
    "bad",
    [":Bg", "&Bg", "B", "Bgg", "B\x7f", "R" + "?" * 20, "A`"],
)
def test_graph6_rejects(bad):
    with pytest.raises(GraphFormatError):
        graph6_decode(bad)


def test_graph6_stream_skips_comments():
    got = list(read_graph6_lines(["# header", "", "A_", "Bg\n"]))
    assert got == [complete(2), path(3)]


# constructors ------------------------------------------------------------


def test_named_graph_parsing():
    assert named_graph("P5") == path(5)
    assert named_graph("3K2") == three_k2()
    assert named_graph("K2,3").num_edges() == 6
    assert named_graph("E4").num_edges() == 0
    with pytest.raises(KeyError):
        named_graph("no_such_graph")


def test_named_graph_shapes():
    # degree sequences pin the structure
    assert sorted(full_house().degrees()) == [2, 3, 3, 4, 4]
    assert sorted(dart().degrees()) == [1, 2, 2, 3, 4]
    assert sorted(ltimes().degrees()) == [1, 1, 2, 2, 4]
    assert is_isomorphic(complement(full_house()), disjoint_union(path(3), Graph.empty(2)))


def test_vertex_sum_path_concatenation():
    assert is_isomorphic(vertex_sum(path(3), 2, complete(2), 0), path(4))


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=6, min_n=2), graphs(max_n=6, min_n=2), st.data())
def test_vertex_sum_then_delete_is_union(g, h, data):
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, h.n - 1))
    s = vertex_sum(g, u, h, v)
    assert s.n == g.n + h.n - 1
    assert is_isomorphic(delete_vertex(s, u), disjoint_union(delete_vertex(g, u), delete_vertex(h, v)))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_complement_involution(g):
    assert complement(complement(g)) == g


def test_induced_subgraph_basics():
    g = path(5)
    assert induced_subgraph(g, range(5)) == g
    assert is_isomorphic(delete_vertex(g, 2), disjoint_union(path(2), path(2)))
    with pytest.raises((ValueError, IndexError)):
        induced_subgraph(g, [0, 7])


def test_ladder_w_and_x_deletions_isomorphic():
    lad = ladder_p3xp2()
    # w and x are the two middle-of-side vertices; both deletions are isomorphic
    assert is_isomorphic(delete_vertex(lad, 2), delete_vertex(lad, 3))


# canonical forms ---------------------------------------------------------


def test_eleven_graphs_on_four_vertices():
    pairs = list(itertools.combinations(range(4), 2))
    forms = {
        canonical_form(Graph.from_edges(4, [e for e, b in zip(pairs, bits) if b]))
        for bits in itertools.product([0, 1], repeat=6)
    }
    assert len(forms) == 11


def test_isomorphism_examples():
    p4 = path(4)
    assert is_isomorphic(p4, relabel(p4, [3, 2, 1, 0]))
    assert not is_isomorphic(dart(), ltimes())
    assert is_isomorphic(complement(join(path(3), path(3))), disjoint_union(disjoint_union(complete(2), complete(2)), Graph.empty(2)))


def test_canonical_form_permutation_invariance():
    rng = random.Random(2024)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 10), rng.random())
        cf = canonical_form(g)
        for _ in range(100 if g.n <= 7 else 10):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_form(relabel(g, perm)) == cf


def test_canonical_form_agrees_with_networkx():
    rng = random.Random(99)
    for _ in range(300):
        n = rng.randint(1, 8)
        g, h = random_graph(rng, n), random_graph(rng, n)
        if g.num_edges() != h.num_edges():
            continue
        assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_canonical_form_size_cap():
    with pytest.raises(ValueError):
        canonical_form(path(11))


# induced containment -----------------------------------------------------


def naive_contains(g, h):
    for s in itertools.combinations(range(g.n), h.n):
        sub = induced_subgraph(g, s)
        if nx.is_isomorphic(to_nx(sub), to_nx(h)):
            return True
    return False


def test_contains_induced_examples():
    assert contains_induced(ladder_p3xp2(), path(5))
    assert not contains_induced(complete(6), path(3))
    assert not contains_induced(full_house(), dart())


def test_contains_induced_against_naive_scan():
    rng = random.Random(1)
    for _ in range(400):
        g = random_graph(rng, rng.randint(1, 6))
        h = random_graph(rng, rng.randint(1, g.n))
        assert contains_induced(g, h) == naive_contains(g, h)


def test_induced_copies_lexicographic_and_maps():
    g = ladder_p3xp2()
    copies = list(induced_copies(g, path(4)))
    assert copies == sorted(copies)
    for c in copies:
        sub = induced_subgraph(g, c)
        phi = isomorphism_map(path(4), sub)
        assert all(sub.has_edge(phi[a], phi[b]) for a, b in path(4).edges())


# connectivity ------------------------------------------------------------


def test_connectivity_examples():
    assert connectivity_class(three_k2()) is Connectivity.DISCONNECTED
    assert connectivity_class(path(5)) is Connectivity.HAS_CUT_VERTEX
    assert connectivity_class(join(path(3), path(3))) is Connectivity.TWO_CONNECTED


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=9, min_n=2))
def test_cut_vertices_match_networkx(g):
    h = to_nx(g)
    if nx.is_connected(h):
        assert set(cut_vertices(g)) == set(nx.articulation_points(h))
