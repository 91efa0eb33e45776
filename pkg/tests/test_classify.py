from __future__ import annotations

import random

import pytest

from cayleyauto.classify import (
    cayley_labels,
    classify,
    coset_structure,
    dagger_check,
    derived_labeling,
    invariance_subgroup,
    isomorphic_via_base_point,
    reproduces,
    similarity_bijection,
)
from cayleyauto.core import Automaton
from cayleyauto.errors import NotAGroup, NotCayley, NotSchreier
from cayleyauto.groups import (
    QUATERNION_GENERATORS,
    PermGroup,
    Permutation,
    cayley_automaton,
    corpus,
    parse_permutations,
)
from cayleyauto.kernel import build_kernel_graph, has_global_relations_all_types, monoid_closure
from conftest import CORPUS, graph_of
from strategies import random_automaton, random_permutation_automaton

ALL_TRUE = {"r1": True, "is_group": True, "is_cayley": True, "homogeneous": True,
            "self_similar": True, "reproduces": True}


def test_thue_morse_all_flags():
    assert classify(graph_of("thue_morse")).flags() == ALL_TRUE


def test_quaternion_all_flags():
    assert classify(graph_of("quaternion_fig3")).flags() == ALL_TRUE


def test_apery_flags():
    c = classify(graph_of("apery_mod7"))
    assert c.flags() == ALL_TRUE and c.kernel_size == c.monoid_order == 6


def test_leftmost_digit_p3():
    c = classify(graph_of("leftmost_digit_p3"))
    assert c.r1 and c.is_group and c.is_cayley and c.homogeneous
    assert not c.reproduces
    assert c.witnesses["reproduction"]["index"] == 2


def test_dihedral_square_not_homogeneous():
    c = classify(graph_of("dihedral_square"))
    assert c.is_group and not c.is_cayley
    assert not c.homogeneous and not c.self_similar
    assert "homogeneity" in c.witnesses


def test_similarity_examples():
    g = graph_of("thue_morse")
    assert similarity_bijection(g, 1) == {"A": "B", "B": "A"}
    for name in CORPUS:
        g = graph_of(name)
        phi = similarity_bijection(g, g.base)
        assert phi is not None and all(k == v for k, v in phi.items())


def test_similarity_absent_for_different_letter_counts():
    # from a: A exactly at n = 2^k - 1; from b: constant B
    aut = Automaton(2, ("a", "b"), ("A", "B"), ((1, 0), (1, 1)), (0, 1), 0)
    g = build_kernel_graph(aut)
    assert g.size == 2
    assert similarity_bijection(g, 1) is None


def test_derived_labeling_thue_morse():
    g = graph_of("thue_morse")
    d = derived_labeling(g)
    assert d.sequence(64) == corpus("thue_morse").sequence(64)
    assert reproduces(corpus("thue_morse"), g).equal


def test_derived_labeling_quaternion_isomorphic():
    aut = corpus("quaternion_fig3")
    g = build_kernel_graph(aut)
    assert reproduces(aut, g, prefix=2**12).equal
    assert isomorphic_via_base_point(aut, g)


def test_reproduces_leftmost():
    rep = reproduces(corpus("leftmost_digit_p3"), graph_of("leftmost_digit_p3"))
    assert not rep.equal and rep.witness == 2 and rep.prefix_mismatch == 2


def test_derived_needs_invertible_t1():
    aut = Automaton(2, ("a", "b"), ("A", "B"), ((1, 0), (1, 1)), (0, 1), 0)
    with pytest.raises(NotAGroup):
        derived_labeling(build_kernel_graph(aut))


def _z4(labels):
    gens = parse_permutations(["(1,2,3,4)", "(1,2,3,4)"], 4)
    from cayleyauto.groups import schreier_automaton

    return schreier_automaton(gens, 0, labels)


def test_dagger_examples():
    assert dagger_check(corpus("thue_morse"))
    assert dagger_check(corpus("apery_mod7"))
    assert not dagger_check(_z4(["c"] * 4))


def test_dagger_agrees_with_kernel_size():
    rng = random.Random(5)
    checked = 0
    while checked < 100:
        aut = random_permutation_automaton(rng, p=rng.choice([2, 3]), max_states=6)
        if len(aut.reachable()) != aut.size:
            continue
        checked += 1
        assert dagger_check(aut) == (build_kernel_graph(aut).size == aut.size)


def test_dagger_not_schreier():
    with pytest.raises(NotSchreier):
        dagger_check(corpus("leftmost_digit_p3"))
    with pytest.raises(NotSchreier):
        dagger_check(corpus("thue_morse"), PermGroup.from_cycles(["(1,2)", "(1,2)"]))


def test_invariance_subgroup_examples():
    G, tau = cayley_labels(corpus("thue_morse"))
    H = invariance_subgroup(G, tau)
    assert H.trivial and H.is_normal

    G, tau = cayley_labels(_z4(["e", "o", "e", "o"]))
    H = invariance_subgroup(G, tau)
    assert H.order == 2 and H.is_normal and G.order // H.order == 2

    G, tau = cayley_labels(corpus("quaternion_fig3"))
    H = invariance_subgroup(G, tau)
    assert H.trivial and H.is_normal


def test_invariance_not_cayley():
    with pytest.raises(NotCayley):
        cayley_labels(corpus("dihedral_square"))
    G = PermGroup.from_cycles(["(1,2)", "(1,2)"])
    with pytest.raises(NotCayley):
        invariance_subgroup(G, ["A"])


def test_coset_structure_thue_morse():
    cs = coset_structure(graph_of("thue_morse"))
    assert len(cs.K) == 1 and cs.core_trivial
    assert sorted(cs.letter_bijection.values()) == ["A", "B"]


def test_coset_structure_apery():
    cs = coset_structure(graph_of("apery_mod7"))
    assert len(cs.K) == 1 and cs.group.order == 6 and cs.group.is_cyclic
    assert sorted(cs.letter_bijection.values()) == [f"d{k}" for k in range(1, 7)]


def test_coset_structure_absent():
    assert coset_structure(graph_of("dihedral_square")) is None


def test_coset_structure_recovers_K():
    G = PermGroup.from_cycles(["(1,2,3)", "(1,2)"])
    K = G.subgroup([Permutation.from_cycles("(1,2)", 3)])
    aut = cayley_automaton(G, K)
    g = build_kernel_graph(aut)
    cs = coset_structure(g)
    assert cs is not None and cs.core_trivial and len(cs.K) == 2
    # map G(a) back to G through generator words and compare up to conjugation
    image = {G.evaluate_word(cs.group.words[cs.group.index[k]]) for k in cs.K}
    conjugates = [{x.inverse() * k * x for k in K} for x in G.elements]
    assert image in conjugates
    assert len(cs.letter_bijection) == G.order // len(K) == len(aut.alphabet)


def _p2_pool():
    rng = random.Random(2024)
    pool = [corpus(n) for n in CORPUS if corpus(n).p == 2]
    for k in range(260):
        if k % 2:
            pool.append(random_permutation_automaton(rng, max_states=6))
        else:
            pool.append(random_automaton(rng, max_states=6))
    return pool


def test_equivalences_p2():
    groups = 0
    for aut in _p2_pool():
        g = build_kernel_graph(aut)
        c = classify(g, prefix=2**12)
        assert has_global_relations_all_types(g).all_types == monoid_closure(g).is_group
        assert c.homogeneous == (c.is_group and c.is_cayley)
        if c.self_similar:
            assert c.homogeneous
        if c.homogeneous:
            assert c.r1
        if c.is_group:
            groups += 1
            assert c.reproduces
    assert groups > 50


def test_implications_p3():
    rng = random.Random(99)
    for _ in range(80):
        aut = random_permutation_automaton(rng, p=3, max_states=5)
        c = classify(build_kernel_graph(aut), prefix=3**6)
        assert not c.self_similar or c.homogeneous
        assert not c.homogeneous or c.r1


def _random_group_and_core_free_subgroup(rng):
    while True:
        degree = rng.randint(2, 4)
        gens = []
        for _ in range(rng.choice([2, 3])):
            img = list(range(degree))
            rng.shuffle(img)
            gens.append(Permutation(img))
        G = PermGroup(gens)
        if G.order > 24 or G.order < 2:
            continue
        for _ in range(10):
            K = G.subgroup([rng.choice(G.elements)])
            if len(G.core(K)) == 1:
                return G, K


def test_round_trip_random():
    rng = random.Random(17)
    for _ in range(20):
        G, K = _random_group_and_core_free_subgroup(rng)
        aut = cayley_automaton(G, K)
        g = build_kernel_graph(aut)
        c = classify(g)
        assert c.self_similar and c.is_cayley
        assert g.size == G.order
        assert isomorphic_via_base_point(aut, g)


def test_quaternion_cayley_round_trip():
    G = PermGroup(parse_permutations(QUATERNION_GENERATORS, 8))
    aut = cayley_automaton(G)
    g = build_kernel_graph(aut)
    assert g.size == 8 and isomorphic_via_base_point(aut, g)
