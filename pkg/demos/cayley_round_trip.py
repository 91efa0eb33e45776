"""From a permutation group to a Cayley automaton and back."""

from __future__ import annotations

from cayleyauto import build_kernel_graph, classify
from cayleyauto.classify import coset_structure, isomorphic_via_base_point
from cayleyauto.groups import PermGroup, cayley_automaton, parse_permutations

G = PermGroup(parse_permutations(["(1,2,3,4)", "(1,3)"], 4))  # dihedral of order 8
K = G.subgroup(parse_permutations(["(2,4)"], 4))
aut = cayley_automaton(G, K)
g = build_kernel_graph(aut)
print(f"|G| = {G.order}, |K| = {len(K)}, letters: {aut.alphabet}")
print("kernel size:", g.size)
print("flags:", classify(g).flags())
print("isomorphic to the input Cayley graph:", isomorphic_via_base_point(aut, g))
cs = coset_structure(g)
print("recovered K order:", len(cs.K), "core trivial:", cs.core_trivial)
