from collections import Counter

import networkx as nx
import pytest

from mrforbid.forbidden import (
    CatalogIndex,
    ForbiddenCatalog,
    RankTable,
    catalog_report,
    certify_minimal,
    find_forbidden,
    find_relative_forbidden,
    generate_graphs,
    ingest_graph6,
    is_mr_le_3,
)
from mrforbid.graphs import (
    Graph,
    canonical_form,
    complete,
    graph6_encode,
    is_isomorphic,
    ladder_p3xp2,
    named_graph,
    path,
)
from mrforbid.minrank import min_rank

F3_NAMES = ["3k2", "p3_join_p3", "dart", "ltimes", "p3_union_k2", "full_house", "P4"]


def atlas_forms():
    by_n = {}
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        g = Graph.from_edges(n, h.edges())
        by_n.setdefault(n, set()).add(canonical_form(g))
    return by_n


def test_generation_matches_graph_atlas():
    atlas = atlas_forms()
    for n in range(0, 8):
        assert set(generate_graphs(n).members) == atlas[n]


def test_generation_counts():
    assert [len(generate_graphs(n)) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]


def test_ingest_round_trip():
    lines = ["# comment"] + [graph6_encode(cf.graph()) for cf in generate_graphs(5).members]
    assert set(ingest_graph6(lines)) == set(generate_graphs(5).members)


@pytest.fixture(scope="module")
def table6():
    t = RankTable(2)
    t.ensure(6)
    return t


def test_small_searches(table6):
    k0 = find_forbidden(2, 0, 3, table=table6)
    assert [m.graph6 for m in k0.members] == ["A_"]
    k1 = find_forbidden(2, 1, 4, table=table6)
    assert len(k1) > 0
    for m in k1.members:
        assert certify_minimal(2, 1, m.graph).minimal


def test_f3_search_matches_named_list(table6):
    cat = find_forbidden(2, 2, 6, table=table6)
    assert len(cat) == 7
    named = [named_graph(x) for x in F3_NAMES]
    assert {canonical_form(g) for g in named} == cat.canonical_set()


def test_catalog_round_trip_and_determinism(table6, tmp_path):
    a = find_forbidden(2, 2, 6, table=table6)
    b = find_forbidden(2, 2, 6, jobs=2)
    assert a.dumps() == b.dumps()
    path_ = tmp_path / "f3.g6"
    a.write(path_)
    back = ForbiddenCatalog.read(path_)
    assert back.dumps() == a.dumps()


def test_catalog_loads_rejects_bad_headers():
    with pytest.raises(ValueError):
        ForbiddenCatalog.loads("A_\n")
    with pytest.raises(ValueError):
        ForbiddenCatalog.loads("# field: 2\n# k: 0\n# members: 2\nA_\n")


def test_certificates():
    cert = certify_minimal(2, 2, named_graph("full_house"))
    assert cert.minimal and cert.mr == 3
    assert not certify_minimal(2, 3, ladder_p3xp2()).minimal
    assert certify_minimal(2, 3, path(5)).minimal


def test_ladder_not_minimal_but_relative(table6):
    rel = find_relative_forbidden(2, 3, path(4), 6, table=table6, sizes=[5, 6])
    forms = rel.canonical_set()
    assert canonical_form(ladder_p3xp2()) in forms
    assert canonical_form(path(5)) in forms
    plain = find_forbidden(2, 3, 6, table=table6).canonical_set()
    assert canonical_form(ladder_p3xp2()) not in plain


def test_decision_procedure_small(table6):
    cat = find_forbidden(2, 2, 6, table=table6)
    index = CatalogIndex(cat)
    # the same decision procedure one level down: mr <= 2 via the 7-member catalog
    for n in range(1, 7):
        for cf in generate_graphs(n).members:
            assert (index.find(cf.graph()) is None) == (table6[cf] <= 2)


def test_report_consistency(table6):
    cat = find_forbidden(2, 2, 6, table=table6)
    rep = catalog_report(cat)
    assert rep["schema"] == 1 and rep["members"] == 7
    assert sum(rep["by_connectivity"].values()) == 7
    assert Counter(rep["member_connectivity"]) == {k: v for k, v in rep["by_connectivity"].items() if v}
    assert rep["by_connectivity"]["disconnected"] == 2  # 3K2 and P3 u K2


def test_is_mr_le_3_trivial():
    cat = ForbiddenCatalog.loads("# field: 2\n# k: 3\nDhC\n")  # P5 only
    assert is_mr_le_3(complete(8), cat)
    assert not is_mr_le_3(path(6), cat)
    assert min_rank(2, path(6)) == 5
    assert is_isomorphic(cat.members[0].graph, path(5))


def test_every_f4_member_is_needed(f4_catalog):
    # dropping a member makes the decision procedure wrong on that member itself
    for i, m in enumerate(f4_catalog.members):
        rest = ForbiddenCatalog(f4_catalog.field, 3, f4_catalog.members[:i] + f4_catalog.members[i + 1 :])
        assert is_mr_le_3(m.graph, rest)
        assert min_rank(2, m.graph) == 4
