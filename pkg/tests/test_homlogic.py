import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deepwide.equiv import enumerate_graphs
from deepwide.graph import (GraphError, LabelledGraph, complete, cycle, path, product,
                            remove_label, set_label)
from deepwide.hom import hom_brute, hom_count, hom_dp, hom_profile
from deepwide.logic import (BOT, TOP, And, Edge, Exactly, Exists, FormulaError, Not, Or,
                            evaluate, formula_from_ct, free_variables, in_fragment, is_guarded,
                            parse, qg_from_formula, qg_from_guarded_formula, qr, term_witnesses,
                            to_text, variables)
from deepwide.membership import elimination_ct, labelled_ct
from deepwide.quantum import (QuantumGraph, hom_count_quantum, indicator_polynomial,
                              interpolate, qg_power, qg_product, remove_label_qg)


def random_labelled(r, n, p=0.5, labels=(1, 2)):
    es = tuple((u, v) for u in range(n) for v in range(u + 1, n) if r.random() < p)
    lab = tuple((l, r.randrange(n)) for l in labels if n and r.random() < 0.6)
    return LabelledGraph(n, es, lab)


def labelled_like(r, g, labels):
    """g with each label in ``labels`` put on a random vertex."""
    for l in labels:
        g = set_label(g, l, r.randrange(g.n))
    return g


# -- homomorphism counts ------------------------------------------------------

def test_small_hom_counts():
    assert hom_count(complete(2), complete(3)) == 6
    assert hom_count(cycle(3), complete(3)) == 6
    assert hom_count(cycle(3), cycle(6)) == 0
    assert hom_count(path(3), path(3)) == 6
    assert hom_count(LabelledGraph(0), cycle(4)) == 1
    assert hom_count(LabelledGraph(2), path(3)) == 9


def test_labels_restrict_homs():
    f = set_label(path(2), 1, 0)
    g = set_label(path(3), 1, 1)
    assert hom_count(f, g) == 2
    assert hom_profile(f, path(3)) == [1, 2, 1]
    with pytest.raises(GraphError):
        hom_profile(path(2), path(3))


def test_brute_and_dp_agree():
    r = random.Random(2)
    for _ in range(300):
        f = random_labelled(r, r.randint(0, 6), 0.4)
        g = random_labelled(r, r.randint(1, 6), 0.5)
        g = labelled_like(r, g.unlabelled(), sorted(f.label_map)) if g.n else g
        assert hom_brute(f, g) == hom_dp(f, g), (f, g)


def test_product_multiplies_hom_counts():
    r = random.Random(4)
    for _ in range(200):
        a = random_labelled(r, r.randint(1, 4))
        b = random_labelled(r, r.randint(1, 4))
        p = product(a, b)
        g = labelled_like(r, random_labelled(r, r.randint(1, 5), labels=()),
                          sorted(set(a.label_map) | set(b.label_map)))
        assert hom_count(p, g) == hom_count(a, g) * hom_count(b, g)


def test_label_deletion_sums_over_vertices():
    r = random.Random(6)
    for _ in range(150):
        f = set_label(random_labelled(r, r.randint(1, 4), labels=(2,)), 1, 0)
        g = labelled_like(r, random_labelled(r, r.randint(1, 5), labels=()),
                          sorted(f.label_map))
        total = sum(hom_count(f, set_label(g, 1, v)) for v in range(g.n))
        assert hom_count(remove_label(f, 1), remove_label(g, 1)) == total
        q = remove_label_qg(QuantumGraph.of(f), 1)
        assert hom_count_quantum(q, remove_label(g, 1)) == total


def test_fully_labelled_counts_are_indicators():
    r = random.Random(8)
    for _ in range(100):
        f = random_labelled(r, 2, labels=())
        f = LabelledGraph(2, f.edges, ((1, 0), (2, 1)))
        g = labelled_like(r, random_labelled(r, r.randint(1, 4), labels=()), (1, 2))
        assert hom_count(f, g) in (0, 1)


# -- quantum graphs ---------------------------------------------------------

def test_interpolation_example():
    assert indicator_polynomial([1], [0, 3]) == [0, Fraction(3, 2), Fraction(-1, 2)]
    with pytest.raises(ValueError):
        indicator_polynomial([1], [1])


@st.composite
def small_qgs(draw):
    r = random.Random(draw(st.integers(0, 10 ** 6)))
    terms = [(draw(st.fractions(-3, 3, max_denominator=4)), random_labelled(r, r.randint(0, 3)))
             for _ in range(draw(st.integers(0, 3)))]
    return QuantumGraph(terms)


@settings(max_examples=60, deadline=None)
@given(small_qgs(), small_qgs(), st.integers(0, 10 ** 6))
def test_qg_product_is_multiplicative(a, b, seed):
    r = random.Random(seed)
    g = labelled_like(r, random_labelled(r, r.randint(1, 4), labels=()),
                      sorted(a.labels() | b.labels()))
    ha, hb = hom_count_quantum(a, g), hom_count_quantum(b, g)
    assert hom_count_quantum(qg_product(a, b), g) == ha * hb
    assert hom_count_quantum(a + b, g) == ha + hb
    assert hom_count_quantum(a - b, g) == ha - hb
    assert hom_count_quantum(qg_power(a, 2), g) == ha * ha
    assert QuantumGraph.from_json(a.to_json()) == a


def test_qg_merges_isomorphic_terms():
    a = set_label(path(3), 1, 0)
    b = set_label(path(3), 1, 2)
    q = QuantumGraph([(1, a), (2, b)])
    assert len(q) == 1 and q.terms[0][0] == 3
    assert len(QuantumGraph([(1, a), (-1, b)])) == 0
    assert QuantumGraph.unit() * q == q


def test_interpolate_hits_targets():
    f = set_label(path(2), 1, 0)
    a = remove_label_qg(QuantumGraph.of(f), 1)      # counts 2m
    b = interpolate(a, [4], [0, 2, 6])
    for g in enumerate_graphs(4, 1):
        if 2 * g.m in (0, 2, 4, 6):
            assert hom_count_quantum(b, g) == (1 if g.m == 2 else 0)


# -- formulas ---------------------------------------------------------------

def test_parse_and_print():
    a = parse("(exists>= 2 2 (and (E 1 2) (not (= 1 2))))")
    assert to_text(a) == "(exists>= 2 2 (and (E 1 2) (not (= 1 2))))"
    assert parse(to_text(a)) is a
    assert qr(a) == 1 and variables(a) == {1, 2} and free_variables(a) == {1}
    assert in_fragment(a, 2, 1) and not in_fragment(a, 1, 1)
    b = parse("(forall 1 (exists 2 (E 1 2)))")
    assert qr(b) == 2 and free_variables(b) == set()
    assert parse("(exists= 1 1 true)") is Exactly(1, 1, TOP)
    for bad in ["(", "(E 1)", "(foo 1 2)", "true false", "(exists>= 0 1 true)"]:
        with pytest.raises(FormulaError):
            parse(bad)


def test_connective_simplification():
    assert And() is TOP and Or() is BOT
    assert Not(Not(Edge(1, 2))) is Edge(1, 2)
    assert And(TOP, Edge(1, 2)) is Edge(1, 2)
    assert Or(BOT, TOP) is TOP
    assert Exists(1, 1, BOT) is BOT


def test_evaluation():
    no_isolated = parse("(forall 1 (exists 2 (E 1 2)))")
    assert evaluate(cycle(4), no_isolated)
    assert not evaluate(LabelledGraph(3, ((0, 1),)), no_isolated)
    deg2 = parse("(exists= 2 2 (E 1 2))")
    assert [evaluate(set_label(path(3), 1, v), deg2) for v in range(3)] == [False, True, False]
    with pytest.raises(FormulaError):
        evaluate(path(3), Edge(1, 2))


def test_formula_from_ct_examples():
    for g in [path(3), cycle(3), complete(2), LabelledGraph(2)]:
        ct = elimination_ct(g, 3, 3)
        for m in range(4):
            a = formula_from_ct(ct, m)
            assert free_variables(a) == set()
            for h in enumerate_graphs(4):
                assert evaluate(h, a) == (hom_count(g, h) == m), (g, m, h)


def test_labelled_ct_formula():
    f = set_label(path(3), 1, 0)
    ct = labelled_ct(f, 2, 2)
    a = formula_from_ct(ct, 1)
    assert free_variables(a) == {1}
    for h in enumerate_graphs(4, 1):
        for v in range(h.n):
            hv = set_label(h, 1, v)
            assert evaluate(hv, a) == (hom_count(f, hv) == 1)


def test_guarded_formulas():
    assert is_guarded(parse("(exists 2 (and (E 1 2) true))"))
    assert not is_guarded(parse("(exists 2 true)"))
    f = set_label(path(3), 1, 1)
    ct = labelled_ct(f, 2, 2, guarded=True)
    assert ct is not None
    for m in range(3):
        a = formula_from_ct(ct, m, guarded=True)
        assert is_guarded(a)
        qg = qg_from_guarded_formula(a, 4, 2, 2)
        for h in enumerate_graphs(4, 1):
            for v in range(h.n):
                hv = set_label(h, 1, v)
                want = hom_count(f, hv) == m
                assert evaluate(hv, a) == want
                assert hom_count_quantum(qg, hv) == int(want)
    with pytest.raises(FormulaError):
        qg_from_guarded_formula(parse("(exists 2 true)"), 4)


def test_qg_from_formula_indicator():
    a = parse("(exists>= 2 1 (exists 2 (E 1 2)))")      # at least two non-isolated vertices
    qg = qg_from_formula(a, 4, 2, 2)
    for h in enumerate_graphs(4):
        assert hom_count_quantum(qg, h) == int(evaluate(h, a))
    with pytest.raises(FormulaError):
        qg_from_formula(a, 4, 2, 1)


def test_term_witnesses_and_distinguisher():
    # a quantum graph telling two graphs apart has a single term that does
    a = parse("(exists 1 (exists>= 2 2 (E 1 2)))")      # some vertex of degree >= 2
    qg = qg_from_formula(a, 6, 2, 2)
    cts, bad = term_witnesses(qg, 2, 2)
    assert bad is None and len(cts) == len(qg)
    g, h = path(3), LabelledGraph(3, ((0, 1),))
    assert hom_count_quantum(qg, g) != hom_count_quantum(qg, h)
    assert any(hom_count(t, g) != hom_count(t, h) for _, t in qg.terms)
    _, bad = term_witnesses(QuantumGraph.of(path(7)), 2, 3)
    assert bad == path(7)
