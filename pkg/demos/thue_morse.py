"""Thue-Morse: kernel, fractions and letter frequencies."""

from __future__ import annotations

from cayleyauto import build_kernel_graph, classify, corpus, frequency_report
from cayleyauto.rational import L_multivariate, L_univariate, series_counts

aut = corpus("thue_morse")
g = build_kernel_graph(aut)
print("first terms:", "".join(g.sequence(g.base, 16)))
print("kernel size:", g.size)
print("classification:", classify(g).flags())

L = L_univariate(g)
print("L(a, x) =", L.format())
print("L(a, x, y) =", L_multivariate(g).format())

s = series_counts(L, 8)
print("letters among a_1..a_255:", {d: s.partial[d][-1] for d in L.letters})
for v in frequency_report(L, 2).letters:
    print(f"frequency of {v.letter}: {v.limit}")
