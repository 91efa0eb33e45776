"""Apery numbers mod 7: a cyclic kernel group of order 6 and equal letter frequencies."""

from __future__ import annotations

from math import comb

from cayleyauto import build_kernel_graph, classify, corpus, frequency_report
from cayleyauto.frequency import empirical_counts
from cayleyauto.kernel import monoid_closure
from cayleyauto.rational import L_univariate


def apery(n: int) -> int:
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


aut = corpus("apery_mod7")
g = build_kernel_graph(aut)
print("a_1..a_12:", " ".join(g.sequence(g.base, 12)))
print("A(n) mod 7:", " ".join(f"d{apery(n) % 7}" for n in range(1, 13)))
mon = monoid_closure(g)
print(f"kernel size {g.size}, G(a) order {mon.order}, group: {mon.is_group}")
print("self-similar:", classify(g).self_similar)

L = L_univariate(g)
print("denominator:", L.denominator.format())
rep = frequency_report(L, 7)
print("limits:", {v.letter: str(v.limit) for v in rep.letters})
for n in (3, 4, 5, 6):
    ec = empirical_counts(aut, n)
    err = max(abs(float(ec.ratio(d)) - 1 / 6) for d in aut.alphabet)
    print(f"n = {n}: largest deviation from 1/6 is {err:.4f}")
