from __future__ import annotations

import math
from fractions import Fraction

import pytest

from cayleyauto.core import Automaton, prefix_labels
from cayleyauto.errors import AmbiguousRoot, EnumerationBound, HypothesisFailure, ZeroConstantTerm
from cayleyauto.frequency import (
    analyze_denominator,
    corollary_limits,
    empirical_counts,
    frequency_report,
    oscillation_coefficient,
    unit_circle_root_count,
)
from cayleyauto.groups import corpus
from cayleyauto.poly import Poly
from cayleyauto.rational import RationalFunction
from conftest import CORPUS, univariate

from test_rational import APERY_P, QUAT_P


def test_apery_roots():
    an = analyze_denominator(univariate("apery_mod7").denominator, 7)
    assert sum(r.multiplicity for r in an.roots) == 6
    circ = an.circle_roots
    assert len(circ) == 1 and circ[0].exact and circ[0].value == Fraction(1, 7)
    exact = sorted(r.value for r in an.roots if r.exact)
    assert exact == [Fraction(-1, 3), Fraction(1, 7)]
    mods = sorted(round(r.modulus, 9) for r in an.roots if not r.exact)
    assert mods == [round(1 / math.sqrt(21), 9)] * 2 + [1.0, 1.0]
    assert an.corollary_case


def test_quaternion_roots():
    an = analyze_denominator(Poly((-1, 0, 2, 0, 8)), 2)
    assert {r.value for r in an.circle_roots} == {Fraction(1, 2), Fraction(-1, 2)}
    res = {r.value: r.residue for r in an.circle_roots}
    assert res == {Fraction(1, 2): Fraction(1, 6), Fraction(-1, 2): Fraction(-1, 6)}
    others = [r for r in an.roots if not r.exact]
    assert len(others) == 2
    for r in others:
        assert abs(r.as_complex().real) < 1e-15
        assert abs(r.modulus - math.sqrt(2) / 2) < 1e-14 and r.position == 1
    assert an.hypotheses_hold and not an.corollary_case


def test_simple_denominator():
    an = analyze_denominator(Poly((-1, 2)), 2)
    assert [(r.value, r.multiplicity, r.position) for r in an.roots] == [(Fraction(1, 2), 1, 0)]


def test_residues_numerically():
    # residue of 1/D at a simple root is 1/D'(root)
    D = univariate("apery_mod7").denominator
    an = analyze_denominator(D, 7)
    for r in an.roots:
        a = r.as_complex()
        deriv = sum(k * complex(float(c)) * a ** (k - 1) for k, c in enumerate(D.coeffs) if k)
        assert abs(1 / deriv - complex(r.residue)) < 1e-9 * max(1, abs(complex(r.residue)))


def test_zero_constant_term():
    with pytest.raises(ZeroConstantTerm):
        analyze_denominator(Poly((0, 1)), 2)
    with pytest.raises(ZeroConstantTerm):
        analyze_denominator(Poly(()), 2)


def test_unit_circle_count():
    assert unit_circle_root_count(Poly((1, 0, 1))) == 2  # +-i
    assert unit_circle_root_count(Poly((1, 1, 1))) == 2  # primitive cube roots of unity
    assert unit_circle_root_count(Poly((2, 0, 1))) == 0
    assert unit_circle_root_count(Poly((1, -1, 1)) * Poly((3, 0, 1))) == 2


def test_nonrational_circle_roots_are_certified():
    # 4x^2 + 1 has roots +-i/2 on |x| = 1/2
    an = analyze_denominator(Poly((-1, 2)) * Poly((1, 0, 4)), 2)
    assert len(an.circle_roots) == 3
    assert an.hypotheses_hold and not an.corollary_case


def test_ambiguous_root():
    c = Fraction(1, 4) + Fraction(1, 10**15)
    with pytest.raises(AmbiguousRoot):
        analyze_denominator(Poly((-c, 0, 1)) * Poly((1, 1)), 2)
    # with a looser tolerance the same root is simply outside
    an = analyze_denominator(Poly((-c, 0, 1)) * Poly((1, 1)), 2, tol=1e-16)
    assert an.circle_roots == []


def test_double_root_on_circle_refused():
    D = Poly((-1, 2)) ** 2
    L = RationalFunction(("x",), ("A",), (Poly((0, 1)),), D)
    rep = frequency_report(L, 2)
    assert rep.failure and rep.letters == ()
    assert not rep.hypotheses["circle_roots_simple"]
    with pytest.raises(HypothesisFailure):
        frequency_report(L, 2, strict=True)


def test_root_inside_refused():
    L = RationalFunction(("x",), ("A",), (Poly((0, 1)),), Poly((-1, 4)))  # root 1/4
    rep = frequency_report(L, 2)
    assert rep.failure and not rep.hypotheses["no_roots_inside"]


def test_apery_limits():
    L = univariate("apery_mod7")
    rep = frequency_report(L, 7)
    assert rep.has_limit
    assert all(v.limit == Fraction(1, 6) for v in rep.letters)
    printed = [Poly(c) for c in APERY_P]
    assert all(P(Fraction(1, 7)) == Fraction(570, 16807) for P in printed)
    assert corollary_limits(L, 7) == {v.letter: v.limit for v in rep.letters}


def test_quaternion_even_odd():
    rep = frequency_report(univariate("quaternion_fig3"), 2)
    for v in rep.letters:
        assert v.kind == "even/odd"
        if v.letter in ("d1", "d4", "d5", "d8"):
            assert (v.even, v.odd) == (Fraction(1, 12), Fraction(1, 6))
        else:
            assert (v.even, v.odd) == (Fraction(1, 6), Fraction(1, 12))
        assert v.even_odd_mean == Fraction(1, 8)


def test_quaternion_coefficients_match_closed_form():
    # with the printed normalisation: c(1/2) = -2/3 P(1/2), c(-1/2) = -2/9 P(-1/2)
    L = RationalFunction(("x",), tuple(f"d{k}" for k in range(1, 9)),
                         tuple(Poly(c) for c in QUAT_P), Poly((-1, 0, 2, 0, 8)))
    an = analyze_denominator(L.denominator, 2)
    plus = next(r for r in an.circle_roots if r.value > 0)
    minus = next(r for r in an.circle_roots if r.value < 0)
    for P in L.numerators:
        assert oscillation_coefficient(P, plus) == Fraction(-2, 3) * P(Fraction(1, 2))
        assert oscillation_coefficient(P, minus) == Fraction(-2, 9) * P(Fraction(-1, 2))


def test_thue_morse_limits():
    rep = frequency_report(univariate("thue_morse"), 2)
    assert [v.limit for v in rep.letters] == [Fraction(1, 2)] * 2
    printed = [Poly((0, 0, -1)), Poly((0, -1, 1))]
    assert [P(Fraction(1, 2)) for P in printed] == [Fraction(-1, 4)] * 2


def test_conservation(corpus_name):
    aut = corpus(corpus_name)
    rep = frequency_report(univariate(corpus_name), aut.p)
    if rep.analysis.corollary_case:
        assert sum(v.limit for v in rep.letters) == 1
        assert all(v.limit >= 0 for v in rep.letters)
    for v in rep.letters:
        if v.even is not None:
            assert sum(w.even for w in rep.letters) == 1 == sum(w.odd for w in rep.letters)


def test_oscillation_verdict():
    D = Poly((-1, 2)) * Poly((1, 0, 4))
    L = RationalFunction(("x",), ("A", "B"), (Poly((0, 1)), Poly((0, 0, 1))), D)
    rep = frequency_report(L, 2)
    v = rep.verdict("A")
    assert v.kind == "oscillation" and len(v.terms) == 3
    assert isinstance(v.predicted(5), float)


def test_empirical_thue_morse():
    ec = empirical_counts(corpus("thue_morse"), 3)
    assert ec.below["B"] == 4
    assert ec.upto["B"] == 5  # a_8 = B
    ec1 = empirical_counts(corpus("thue_morse"), 1)
    assert ec1.below == {"A": 0, "B": 1} and ec1.upto == {"A": 0, "B": 2}


@pytest.mark.parametrize("name", CORPUS)
def test_empirical_matches_direct(name):
    aut = corpus(name)
    n = 8 if aut.p == 2 else (4 if aut.p == 3 else 3)
    ec = empirical_counts(aut, n)
    labels = prefix_labels(aut, aut.p**n)
    for d in aut.alphabet:
        k = aut.alphabet.index(d)
        assert ec.below[d] == labels[:-1].count(k)
        assert ec.upto[d] == labels.count(k)
    assert sum(ec.below.values()) == aut.p**n - 1


def test_enumeration_bound():
    with pytest.raises(EnumerationBound):
        empirical_counts(corpus("apery_mod7"), 9)
    with pytest.raises(EnumerationBound):
        empirical_counts(corpus("thue_morse"), 10, bound=2**9)


def test_quaternion_empirical_vs_prediction():
    aut = corpus("quaternion_fig3")
    rep = frequency_report(univariate("quaternion_fig3"), 2)
    errors = []
    for n in (10, 12, 14, 16, 17):
        ec = empirical_counts(aut, n)
        errors.append(max(abs(float(ec.ratio(v.letter)) - float(v.predicted(n))) for v in rep.letters))
    assert errors[-1] <= 0.02 and errors[-2] <= 0.02
    assert errors[0] > errors[3]


def test_apery_empirical():
    aut = corpus("apery_mod7")
    ec = empirical_counts(aut, 6)
    assert all(abs(float(ec.ratio(d)) - 1 / 6) <= 0.05 for d in aut.alphabet)


def test_single_letter_sequence():
    aut = Automaton(2, ("s",), ("Z",), ((0, 0),), (0,), 0)
    from cayleyauto.kernel import build_kernel_graph
    from cayleyauto.rational import L_univariate

    rep = frequency_report(L_univariate(build_kernel_graph(aut)), 2)
    assert rep.verdict("Z").limit == 1
