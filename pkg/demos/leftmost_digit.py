"""The leading base-3 digit: every global relation exists, yet the derived automaton is wrong."""

from __future__ import annotations

from cayleyauto import build_kernel_graph, classify
from cayleyauto.classify import derived_labeling, reproduces
from cayleyauto.groups import leftmost_digit

aut = leftmost_digit(3)
g = build_kernel_graph(aut)
print("a_1..a_20:", "".join(g.sequence(g.base, 20)))
print("kernel size:", g.size)
c = classify(g)
print("flags:", c.flags())
r = reproduces(aut, g)
print("derived automaton reproduces the sequence:", r.equal, "- first difference at n =", r.witness)
derived = derived_labeling(g)
print("derived a_1..a_20:", "".join(derived.sequence(20)))
