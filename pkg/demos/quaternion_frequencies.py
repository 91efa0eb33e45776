"""A quaternion-group sequence whose letter frequencies alternate with the parity of n."""

from __future__ import annotations

from cayleyauto import build_kernel_graph, corpus, frequency_report
from cayleyauto.frequency import empirical_counts
from cayleyauto.rational import L_univariate

aut = corpus("quaternion_fig3")
L = L_univariate(build_kernel_graph(aut))
print("D =", L.denominator.format())
rep = frequency_report(L, 2)
for r in rep.analysis.circle_roots:
    print(f"root {r.value} on the circle, residue {r.residue}")
print(f"{'n':>3} " + " ".join(f"{v.letter:>8}" for v in rep.letters))
for n in range(10, 18):
    ec = empirical_counts(aut, n)
    print(f"{n:>3} " + " ".join(f"{float(ec.ratio(v.letter)):8.5f}" for v in rep.letters))
print("even " + " ".join(f"{str(v.even):>8}" for v in rep.letters))
print(" odd " + " ".join(f"{str(v.odd):>8}" for v in rep.letters))
