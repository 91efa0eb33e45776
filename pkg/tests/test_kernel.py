from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from cayleyauto.core import Automaton, eval_from, word_to_affine
from cayleyauto.errors import SizeLimitExceeded
from cayleyauto.groups import corpus, corpus_all
from cayleyauto.kernel import (
    build_kernel_graph,
    distinguishing_index,
    has_global_relations_all_types,
    kernel_partition,
    minimal_relations,
    monoid_closure,
    rel_equal,
    relation_language,
)
from conftest import graph_of
from strategies import automata, random_automaton


@pytest.mark.parametrize("name, size", [
    ("thue_morse", 2), ("apery_mod7", 6), ("quaternion_fig3", 8),
    ("leftmost_digit_p2", 1), ("leftmost_digit_p3", 1), ("dihedral_square", 4),
])
def test_kernel_sizes(name, size):
    assert len(kernel_partition(corpus(name))) == size
    assert graph_of(name).size == size


def test_thue_morse_graph():
    g = graph_of("thue_morse")
    assert g.gen[0] == (0, 1) and g.gen[1] == (1, 0)
    assert g.base == 0


def test_quaternion_graph_is_input_graph():
    aut = corpus("quaternion_fig3")
    g = graph_of("quaternion_fig3")
    cls = g.class_of
    assert len(set(cls.values())) == aut.size == 8
    for q in range(aut.size):
        for i in range(2):
            assert cls[aut.delta[q][i]] == g.gen[i][cls[q]]


def test_single_state():
    aut = Automaton(3, ("s",), ("X",), ((0, 0, 0),), (0,), 0)
    g = build_kernel_graph(aut)
    assert g.size == 1 and all(t == (0,) for t in g.gen)
    assert monoid_closure(g).order == 1


def test_monoid_orders():
    expected = {"thue_morse": 2, "apery_mod7": 6, "quaternion_fig3": 8,
                "leftmost_digit_p3": 1, "dihedral_square": 8}
    for name, order in expected.items():
        m = monoid_closure(graph_of(name))
        assert m.order == order and m.is_group


def test_non_group_monoid():
    # a_n = A iff n = 2^k - 1; digit 0 sends both kernel elements to the constant B
    aut = Automaton(2, ("a", "b"), ("A", "B"), ((1, 0), (1, 1)), (0, 1), 0)
    g = build_kernel_graph(aut)
    assert g.size == 2
    m = monoid_closure(g)
    assert not m.is_group
    assert not has_global_relations_all_types(g).all_types


def test_monoid_closure_property():
    g = graph_of("quaternion_fig3")
    m = monoid_closure(g)
    s = set(m.elements)
    for a in m.elements:
        for b in m.elements:
            assert tuple(b[x] for x in a) in s
    for e, w in zip(m.elements, m.words):
        assert tuple(g.step(u, w) for u in g.vertices) == e


def test_monoid_bound():
    with pytest.raises(SizeLimitExceeded):
        monoid_closure(graph_of("quaternion_fig3"), bound=4)


def test_first_terms_and_terms(corpus_name):
    aut = corpus_all()[corpus_name]
    g = build_kernel_graph(aut)
    for u in g.vertices:
        q = g.members[u][0]
        for n in range(1, 200):
            assert g.term(u, n) == eval_from(aut, q, n)


def test_labels_order_reproduces_declaration():
    g = graph_of("quaternion_fig3", "labels")
    assert [g.first_term(u, 1) for u in g.vertices] == ["d2", "d4", "d8", "d6", "d3", "d1", "d5", "d7"]
    assert g.base == 5


def test_minimal_relations_thue_morse():
    g = graph_of("thue_morse")
    rels = minimal_relations(g, g.base)
    assert rels == [(0,), (1, 1)]
    assert word_to_affine(rels[0], 2).code == "0"
    assert (word_to_affine(rels[1], 2).i, word_to_affine(rels[1], 2).j) == (2, 3)
    aut = corpus("thue_morse")
    assert all(eval_from(aut, 0, 4 * n + 3) == eval_from(aut, 0, n) for n in range(1, 1001))


def test_minimal_relations_trivial_graph():
    g = graph_of("leftmost_digit_p2")
    assert minimal_relations(g, 0) == [(0,), (1,)]
    with pytest.raises(ValueError):
        minimal_relations(g, 0, max_len=0)


def test_rel_equal_examples():
    g = graph_of("thue_morse")
    assert rel_equal(g, 0, 0) == (True, None)
    assert rel_equal(g, 0, 1) == (True, None)
    # t0 fixes vertex 0 but not vertex 1
    aut = Automaton(2, ("a", "b"), ("A", "B"), ((0, 1), (0, 0)), (0, 1), 0)
    h = build_kernel_graph(aut)
    assert rel_equal(h, 0, 1) == (False, (0,))


def test_relation_language():
    g = graph_of("thue_morse")
    lang = relation_language(g, g.base)
    assert lang.contains_relation(1, 0) and lang.contains_relation(2, 3)
    assert not lang.contains_relation(1, 1)
    assert not lang.accepts(())


def _random_pool(n=120, seed=7):
    rng = random.Random(seed)
    return [random_automaton(rng, p=rng.choice([2, 3]), max_states=8) for _ in range(n)]


def test_congruence_random():
    for aut in _random_pool():
        parts = kernel_partition(aut)
        cls = {q: k for k, c in enumerate(parts) for q in c}
        for c in parts:
            for i in range(aut.p):
                assert len({cls[aut.delta[q][i]] for q in c}) == 1


def test_classes_are_sound_and_complete():
    for aut in _random_pool(60, seed=11):
        parts = kernel_partition(aut)
        reps = [c[0] for c in parts]
        bound = aut.p ** (aut.size * aut.size)
        for a in range(len(reps)):
            for b in range(a + 1, len(reps)):
                n = distinguishing_index(aut, reps[a], reps[b])
                assert n is not None and n <= bound
                assert eval_from(aut, reps[a], n) != eval_from(aut, reps[b], n)
        for c in parts:
            for q in c[1:]:
                assert distinguishing_index(aut, c[0], q) is None


@settings(max_examples=80, deadline=None)
@given(automata(max_states=6, bases=(2, 3)))
def test_r1_iff_group(aut):
    g = build_kernel_graph(aut)
    assert has_global_relations_all_types(g).all_types == monoid_closure(g).is_group
    assert g.size <= len(aut.reachable())
    assert len(g.reachable_from(g.base)) == g.size


@settings(max_examples=60, deadline=None)
@given(automata(max_states=5, bases=(2, 3)))
def test_graph_respects_automaton(aut):
    g = build_kernel_graph(aut)
    cls = g.class_of
    for q in aut.reachable():
        for i in range(aut.p):
            assert cls[aut.delta[q][i]] == g.gen[i][cls[q]]
        assert tuple(g.first_terms[cls[q]]) == tuple(
            aut.tau[aut.delta[q][s]] for s in range(1, aut.p))
