import itertools
import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deepwide.cfi import cfi, cfi_isomorphism, cfi_pair, twist_isomorphism
from deepwide.equiv import enumerate_graphs, in_t
from deepwide.graph import (GraphError, LabelledGraph, complete, contract_edge, cycle,
                            delete_edge, delete_vertex, disjoint_union, grid, parse_text, path,
                            product, product_with_maps, remove_label, set_label, to_text,
                            with_loops)
from deepwide.hom import hom_count
from deepwide.iso import canonical_form, is_isomorphism, isomorphic
from deepwide.serialize import graph_from_json, graph_to_json, load_graph


@st.composite
def graphs(draw, max_n=7, labels=False):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    es = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    lab = ()
    if labels and n:
        ls = draw(st.lists(st.integers(1, 3), unique=True, max_size=3))
        lab = tuple((l, draw(st.integers(0, n - 1))) for l in ls)
    return LabelledGraph(n, tuple(es), lab)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


# -- constructors ----------------------------------------------------------

def test_grid_sizes():
    for h, l in [(1, 3), (2, 5), (2, 7), (3, 8), (4, 9)]:
        g = grid(h, l)
        assert g.n == h * l
        assert g.m == h * (l - 1) + l * (h - 1)
    assert grid(1, 3) == path(3)


def test_basic_families():
    assert path(1).m == 0 and cycle(5).m == 5 and complete(4).m == 6
    with pytest.raises(GraphError):
        LabelledGraph(2, ((0, 0),))
    assert with_loops(path(2)).has_loops()


def test_labels():
    g = set_label(path(3), 1, 2)
    assert g.label_map == {1: 2}
    assert remove_label(g, 1) == path(3)
    assert remove_label(g, 2) == g
    with pytest.raises(GraphError):
        set_label(g, 1, 5)


def test_product_identifies_labels():
    a = LabelledGraph(2, ((0, 1),), ((1, 0), (2, 1)))
    b = LabelledGraph(3, ((0, 2), (1, 2)), ((1, 0), (2, 1)))
    p, ma, mb = product_with_maps(a, b)
    assert p.n == 3 and p.m == 3
    assert ma[0] == mb[0] and ma[1] == mb[1]
    # two labels on one vertex pull two vertices together: a loop appears
    c = LabelledGraph(1, (), ((1, 0), (2, 0)))
    assert product(a, c).has_loops()


def test_minor_operations():
    assert delete_vertex(path(3), 1).m == 0
    assert delete_edge(complete(2), 0, 1).m == 0
    assert contract_edge(cycle(3), 0, 1) == complete(2)
    with pytest.raises(GraphError):
        contract_edge(path(3), 0, 2)


# -- formats ---------------------------------------------------------------

@given(graphs(labels=True))
def test_text_round_trip(g):
    assert parse_text(to_text(g)) == g
    assert graph_from_json(json.loads(json.dumps(graph_to_json(g)))) == g


def test_load_builtins(tmp_path):
    assert load_graph("path:7") == path(7)
    assert load_graph("grid:2x5") == grid(2, 5)
    f = tmp_path / "k1.g"
    f.write_text("1 0\n")
    assert load_graph(str(f)) == LabelledGraph(1)
    with pytest.raises(GraphError):
        load_graph("nonsense:3")


def test_parse_errors():
    for bad in ["", "x y", "2 1\n0\n", "2 1\n0 1\nlabel 1\n"]:
        with pytest.raises(GraphError):
            parse_text(bad)


# -- isomorphism -----------------------------------------------------------

@settings(max_examples=300)
@given(graphs(max_n=8), graphs(max_n=8))
def test_isomorphism_matches_networkx(g, h):
    same = canonical_form(g) == canonical_form(h)
    assert same == nx.is_isomorphic(to_nx(g), to_nx(h))
    f = isomorphic(g, h)
    assert (f is not None) == same
    if f is not None:
        assert is_isomorphism(g, h, f)


@settings(max_examples=200)
@given(graphs(max_n=8, labels=True), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    h = LabelledGraph(g.n, tuple((perm[u], perm[v]) for u, v in g.edges),
                      tuple((l, perm[v]) for l, v in g.labels))
    assert canonical_form(g) == canonical_form(h)


def test_labels_matter_for_isomorphism():
    a = set_label(path(3), 1, 0)
    b = set_label(path(3), 1, 1)
    assert isomorphic(a, b) is None
    assert isomorphic(a, set_label(path(3), 1, 2)) is not None


def test_enumeration_counts_match_atlas():
    counts = [sum(1 for g in enumerate_graphs(n, n)) for n in range(8)]
    assert counts == [1, 1, 2, 4, 11, 34, 156, 1044]
    atlas = [0] * 8
    for g in nx.graph_atlas_g():
        atlas[g.number_of_nodes()] += 1
    assert counts == atlas
    connected = [sum(1 for g in enumerate_graphs(n, n, connected=True)) for n in range(1, 8)]
    assert connected == [1, 1, 2, 6, 21, 112, 853]


# -- CFI -------------------------------------------------------------------

def test_cfi_small_pairs():
    g0, g1 = cfi_pair(cycle(3))
    assert isomorphic(g0, disjoint_union(complete(3), complete(3))) is not None
    assert isomorphic(g1, cycle(6)) is not None
    k0, k1 = cfi_pair(complete(2))
    assert k0 == complete(2) and k1 == LabelledGraph(2)
    p0, p1 = cfi_pair(path(7))
    assert (p0.n, p1.n) == (12, 12)


def test_twist_isomorphism_along_paths():
    for g in [cycle(5), grid(2, 3), complete(4)]:
        for u, v in itertools.combinations(range(g.n), 2):
            p = nx.shortest_path(to_nx(g), u, v)
            f = twist_isomorphism(g, u, v, p)
            src, dst = cfi(g, (u,)), cfi(g, (v,))
            assert is_isomorphism(src.graph, dst.graph, f)
            # the map respects the projection and is the identity off the path
            for x, y in enumerate(f):
                assert src.rho[x] == dst.rho[y]
                if src.rho[x] not in p:
                    assert src.graph.names[x] == dst.graph.names[y]


def test_cfi_parity_on_sparse_six_vertex_graphs():
    for g in enumerate_graphs(6, 6, connected=True):
        if g.m > 7:
            continue
        g0 = cfi(g).graph
        h0 = hom_count(g, g0)
        for r in range(g.n + 1):
            for U in itertools.combinations(range(g.n), r):
                gu = cfi(g, U).graph
                f = cfi_isomorphism(g, (), U)
                if r % 2 == 0:
                    assert is_isomorphism(g0, gu, f)
                else:
                    assert f is None
                    assert hom_count(g, gu) != h0


def test_cfi_rejects_bad_input():
    with pytest.raises(GraphError):
        cfi(LabelledGraph(2))
    with pytest.raises(GraphError):
        cfi(path(3), (5,))


# -- minor closure of T^k_q --------------------------------------------------

def _minors(g):
    for v in range(g.n):
        yield delete_vertex(g, v)
    for u, v in g.edges:
        yield delete_edge(g, u, v)
        yield contract_edge(g, u, v)


def test_t_classes_are_minor_closed():
    for g in enumerate_graphs(6, 1):
        for k in (1, 2, 3):
            for q in (1, 2, 3, 4):
                if in_t(g, k, q):
                    assert all(in_t(h, k, q) for h in _minors(g)), (g, k, q)
