import random

import networkx as nx
import pytest

from deepwide.cfi import cfi_pair
from deepwide.equiv import (EquivError, enumerate_family, gc_equivalent, hom_indistinguishable,
                            separation_experiment, single_labelled_family, verify_gc_witness)
from deepwide.graph import GraphError, LabelledGraph, complete, cycle, disjoint_union, path
from deepwide.iso import canonical_form
from deepwide.membership import treedepth_by_elimination
from deepwide.pebble import (PebbleError, bijective_pebble_game, is_partial_isomorphism,
                             perfect_matching)


def test_matching_size_matches_networkx():
    r = random.Random(1)
    for _ in range(200):
        n = r.randint(1, 7)
        rel = {(v, w) for v in range(n) for w in range(n) if r.random() < 0.35}
        b = nx.Graph()
        b.add_nodes_from([("a", v) for v in range(n)] + [("b", w) for w in range(n)])
        b.add_edges_from((("a", v), ("b", w)) for v, w in rel)
        full = len(nx.max_weight_matching(b, maxcardinality=True)) == n
        m = perfect_matching(n, lambda v, w: (v, w) in rel)
        assert (m is not None) == full
        if m is not None:
            assert sorted(m) == list(range(n))
            assert all((v, m[v]) in rel for v in range(n))


def test_partial_isomorphism():
    assert is_partial_isomorphism(path(3), path(3), [(0, 0), (1, 1)])
    assert not is_partial_isomorphism(path(3), path(3), [(0, 0), (2, 1)])
    assert not is_partial_isomorphism(path(3), path(3), [(0, 0), (1, 0)])


def test_pebble_game_basics():
    assert bijective_pebble_game(cycle(6), cycle(6), 2, 4)
    # one round places one pebble, which cannot see an edge
    assert bijective_pebble_game(path(3), complete(3), 2, 1)
    assert not bijective_pebble_game(path(3), complete(3), 2, 2)
    assert not bijective_pebble_game(path(3), path(4), 1, 1)
    res = bijective_pebble_game(complete(3), path(3), 2, 2)
    assert not res and res.spoiler_line
    assert str(res).startswith("Spoiler wins")


def test_more_rounds_and_pebbles_help_spoiler():
    g0, g1 = cfi_pair(cycle(3))
    wins = {(k, q): bijective_pebble_game(g0, g1, k, q).duplicator_wins
            for k in (1, 2, 3) for q in (0, 1, 2, 3)}
    for (k, q), dup in wins.items():
        if not dup:
            assert all(not wins.get((k2, q2), False) for k2 in range(k, 4)
                       for q2 in range(q, 4))
    assert wins[(2, 3)] and not wins[(3, 3)]


def test_start_positions():
    g, h = disjoint_union(complete(3), complete(3)), cycle(6)
    assert bijective_pebble_game(g, h, 2, 1, start={1: (0, 0)})
    # pebbles on an edge versus a non-edge lose at once
    assert not bijective_pebble_game(g, h, 2, 0, start={1: (0, 0), 2: (1, 3)})
    with pytest.raises(PebbleError):
        bijective_pebble_game(g, h, 2, 1, start={3: (0, 0)})
    with pytest.raises(GraphError):
        bijective_pebble_game(g, h, 2, 1, start={1: (0, 9)})
    with pytest.raises(PebbleError):
        bijective_pebble_game(g, h, 0, 1)


# -- bounded families ---------------------------------------------------------

def test_family_examples():
    assert [g.n for g in enumerate_family("T", 1, 1, 3)] == [1, 2, 3]
    assert all(g.m == 0 for g in enumerate_family("T", 1, 1, 3))
    for q in (1, 2, 3):
        t = {g for g in enumerate_family("T", q, q, 5)}
        td = {g for g in enumerate_family("TWTD", q, q, 5)}
        assert t == td
        assert all(treedepth_by_elimination(g) <= q for g in t)
    p7 = canonical_form(path(7))
    assert p7 not in {canonical_form(g) for g in enumerate_family("T", 2, 3, 7)}
    assert p7 in {canonical_form(g) for g in enumerate_family("TWTD", 2, 3, 7)}
    with pytest.raises(EquivError):
        enumerate_family("X", 1, 1, 3)


def test_guarded_family_bounds():
    # root labels are free in GE, and removing them costs at most k rounds
    def keys(kind, q):
        return {canonical_form(g) for g in enumerate_family(kind, 2, q, 5)}
    ge = keys("GE", 2)
    assert ge <= keys("T", 4)
    p4 = canonical_form(path(4))
    assert p4 in ge and p4 not in keys("T", 2)
    assert all(1 in f.label_map for f in single_labelled_family(2, 2, 4))


def test_hom_indistinguishability():
    g0, g1 = cfi_pair(cycle(3))
    fam = enumerate_family("T", 2, 2, 5)
    assert hom_indistinguishable(g0, g1, fam)
    verdict = hom_indistinguishable(g0, g1, enumerate_family("TWTD", 3, 3, 3))
    assert not verdict and verdict.witness == cycle(3)
    assert verdict.counts == (12, 0)
    assert "12 vs 0" in str(verdict)


def test_gc_equivalence():
    g0, g1 = cfi_pair(cycle(3))
    assert gc_equivalent(g0, g1, 2, 2, 4)
    v = gc_equivalent(path(4), LabelledGraph(4, ((0, 1), (2, 3))), 2, 2, 4)
    assert not v and verify_gc_witness(v, path(4), LabelledGraph(4, ((0, 1), (2, 3))))
    assert not gc_equivalent(path(3), path(4), 2, 2, 3)


def test_separation_reports():
    rep = separation_experiment(3, 3)
    assert not rep.found and not rep.ok()
    assert "no witness" in rep.lines()[0]
    rep = separation_experiment(2, 3)
    assert rep.ok()
    assert rep.witness == path(7) and rep.cfi_sizes == (12, 12)
    assert rep.hom_counts[0] != rep.hom_counts[1]
