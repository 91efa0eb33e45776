"""Letter frequencies along ``n = p^k`` from the fraction ``L(a, x)``.

With ``L = sum_d d P_d / D`` and the roots of ``D`` of modulus ``1/p``
written ``alpha_k = e^{i theta_k} / p`` (all simple, no root inside the
disc), the ratio ``a[p^n, d] / p^n`` equals

    sum_k  P_d(alpha_k) Res(1/D, alpha_k) / (alpha_k^2 - alpha_k) * e^{-i n theta_k}

up to ``o(1)``.  Roots on the circle that are rational (necessarily
``+-1/p``) are handled in exact arithmetic; other roots are located
numerically, and whether they lie on the circle is decided exactly by
counting unit-circle roots through a Sturm sequence.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .core import Automaton
from .errors import AmbiguousRoot, EnumerationBound, HypothesisFailure, ZeroConstantTerm
from .poly import Poly
from .rational import RationalFunction

DEFAULT_TOL = 1e-12
DEFAULT_ENUMERATION_BOUND = 2**24
_PREC_DIGITS = 60


@dataclass(frozen=True)
class RootInfo:
    """One root of ``D``; ``exact`` roots carry a ``Fraction`` value."""

    value: complex | Fraction
    exact: bool
    multiplicity: int
    position: int  # -1 inside the circle |x| = 1/p, 0 on it, +1 outside
    residue: complex | Fraction | None = None

    @property
    def modulus(self) -> float:
        return abs(complex(self.value)) if not self.exact else float(abs(self.value))

    @property
    def theta(self) -> float | None:
        """Argument of the root; only meaningful on the circle."""
        if self.position != 0:
            return None
        return cmath.phase(complex(self.value)) % (2 * cmath.pi)

    def as_complex(self) -> complex:
        return complex(self.value)


@dataclass(frozen=True)
class DenominatorAnalysis:
    p: int
    denominator: Poly
    roots: tuple[RootInfo, ...]

    @property
    def circle_roots(self) -> list[RootInfo]:
        return [r for r in self.roots if r.position == 0]

    @property
    def no_roots_inside(self) -> bool:
        return all(r.position >= 0 for r in self.roots)

    @property
    def circle_roots_simple(self) -> bool:
        return all(r.multiplicity == 1 for r in self.circle_roots)

    @property
    def hypotheses_hold(self) -> bool:
        return self.no_roots_inside and self.circle_roots_simple

    @property
    def corollary_case(self) -> bool:
        circ = self.circle_roots
        return (self.hypotheses_hold and len(circ) == 1 and circ[0].exact
                and circ[0].value == Fraction(1, self.p))

    def flags(self) -> dict[str, bool]:
        return {
            "no_roots_inside": self.no_roots_inside,
            "circle_roots_simple": self.circle_roots_simple,
            "corollary": self.corollary_case,
        }


# -- root location ---------------------------------------------------------------


def _sturm_count(h: Poly, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots of ``h`` in ``(a, b]``."""
    seq = [h, h.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()

    def changes(x):
        signs = [v for v in (q(x) for q in seq) if v != 0]
        return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))

    return changes(a) - changes(b)


def unit_circle_root_count(g: Poly) -> int | None:
    """Exact number of roots of the squarefree ``g`` on ``|z| = 1``.

    Roots on the circle are common roots of ``g`` and its reciprocal.  That
    common factor is palindromic, so it is a polynomial ``h`` in
    ``y = z + 1/z``, and circle roots correspond to real roots of ``h`` in
    ``(-2, 2)``.  Returns ``None`` if ``z = +-1`` is a root (not expected:
    rational roots are removed beforehand).
    """
    if g(1) == 0 or g(-1) == 0:
        return None
    H = g.gcd(g.reciprocal())
    if H.degree <= 0:
        return 0
    if H.degree % 2 or H.reciprocal().monic() != H:
        return None
    m = H.degree // 2
    y = Poly.x()
    V = [Poly.const(2), y]
    for _ in range(2, m + 1):
        V.append(y * V[-1] - V[-2])
    h = Poly.const(H[m])
    for k in range(1, m + 1):
        h = h + V[k].scale(H[m + k])
    return 2 * _sturm_count(h, Fraction(-2), Fraction(2))


def _numeric_roots(g: Poly) -> list[complex]:
    """Roots of ``g``: companion-matrix eigenvalues polished by Newton steps
    in extended precision."""
    if g.degree < 1:
        return []
    coeffs = [float(c) for c in reversed(g.coeffs)]
    seeds = np.roots(coeffs)
    with mpmath.workdps(_PREC_DIGITS):
        cs = [mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in g.coeffs]
        dcs = [k * c for k, c in enumerate(cs)][1:]

        def ev(poly, z):
            acc = mpmath.mpc(0)
            for c in reversed(poly):
                acc = acc * z + c
            return acc

        out = []
        for z0 in seeds:
            z = mpmath.mpc(z0.real, z0.imag)
            for _ in range(50):
                step = ev(cs, z) / ev(dcs, z)
                z -= step
                if abs(step) < mpmath.mpf(10) ** (-_PREC_DIGITS + 5):
                    break
            out.append(complex(z))
    return out


def analyze_denominator(D: Poly, p: int, tol: float = DEFAULT_TOL) -> DenominatorAnalysis:
    """Locate the roots of ``D`` relative to the circle ``|x| = 1/p``."""
    if D.is_zero():
        raise ZeroConstantTerm("the zero polynomial has no roots to analyse")
    if D[0] == 0:
        raise ZeroConstantTerm("D(0) = 0")
    dD = D.derivative()
    inv_p = Fraction(1, p)
    roots: list[RootInfo] = []
    for f, mult in D.squarefree_decomposition():
        rest = f
        for r in f.rational_roots():
            rest = rest.exact_div(Poly((-r, 1)))
            pos = (abs(r) > inv_p) - (abs(r) < inv_p)
            res = Fraction(1) / dD(r) if mult == 1 else None
            roots.append(RootInfo(r, True, mult, pos, res))
        if rest.degree < 1:
            continue
        # circle |x| = 1/p becomes |z| = 1 under x = z / p
        scaled = rest.compose_scale(inv_p)
        on_circle = unit_circle_root_count(scaled)
        if on_circle is None:
            raise AmbiguousRoot("could not certify roots on |x| = 1/p")
        numeric = _numeric_roots(rest)
        dist = sorted(range(len(numeric)), key=lambda k: abs(abs(numeric[k]) * p - 1))
        circle = set(dist[:on_circle])
        for k, z in enumerate(numeric):
            gap = abs(z) - float(inv_p)
            if k in circle:
                if abs(gap) > 1e-6:
                    raise AmbiguousRoot(f"root {z} should lie on |x| = 1/{p}")
                pos = 0
            else:
                if abs(gap) <= tol:
                    raise AmbiguousRoot(f"root {z} is within {tol} of |x| = 1/{p}")
                pos = 1 if gap > 0 else -1
            res = 1 / complex(_eval_complex(dD, z)) if mult == 1 else None
            roots.append(RootInfo(z, False, mult, pos, res))
    roots.sort(key=lambda r: (r.modulus, cmath.phase(r.as_complex())))
    return DenominatorAnalysis(p, D, tuple(roots))


def _eval_complex(q: Poly, z: complex) -> complex:
    acc = 0j
    for c in reversed(q.coeffs):
        acc = acc * z + float(c)
    return acc


# -- the report ------------------------------------------------------------------


@dataclass(frozen=True)
class LetterVerdict:
    """Asymptotic behaviour of ``a[p^n, d] / p^n`` for one letter.

    ``kind`` is ``"limit"``, ``"even/odd"`` or ``"oscillation"``.
    ``terms`` lists ``(coefficient, theta)`` pairs of the oscillating sum.
    """

    letter: str
    kind: str
    terms: tuple[tuple[complex | Fraction, float], ...]
    limit: Fraction | None = None
    even: Fraction | None = None
    odd: Fraction | None = None

    @property
    def even_odd_mean(self) -> Fraction | None:
        if self.even is None:
            return None
        return (self.even + self.odd) / 2

    def predicted(self, n: int) -> float | Fraction:
        if self.limit is not None:
            return self.limit
        if self.even is not None:
            return self.even if n % 2 == 0 else self.odd
        total = sum(complex(c) * cmath.exp(-1j * n * th) for c, th in self.terms)
        return total.real


@dataclass(frozen=True)
class FrequencyReport:
    p: int
    analysis: DenominatorAnalysis
    letters: tuple[LetterVerdict, ...] = field(default=())
    failure: str | None = None

    @property
    def hypotheses(self) -> dict[str, bool]:
        return self.analysis.flags()

    def verdict(self, letter: str) -> LetterVerdict:
        for v in self.letters:
            if v.letter == letter:
                return v
        raise KeyError(letter)

    @property
    def has_limit(self) -> bool:
        return bool(self.letters) and all(v.kind == "limit" for v in self.letters)


def oscillation_coefficient(P: Poly, root: RootInfo):
    """``P(alpha) Res(1/D, alpha) / (alpha^2 - alpha)``."""
    a = root.value if root.exact else root.as_complex()
    val = P(a) if root.exact else _eval_complex(P, a)
    return val * root.residue / (a * a - a)


def frequency_report(L: RationalFunction, p: int, tol: float = DEFAULT_TOL,
                     strict: bool = False) -> FrequencyReport:
    """Describe ``a[p^n, d] / p^n`` for every letter ``d`` of ``L(a, x)``.

    When the root hypotheses fail the report carries ``failure`` and no
    per-letter numbers (``strict=True`` raises instead).
    """
    if not L.univariate:
        L = L.specialize()
    L = L.canonical()
    analysis = analyze_denominator(L.denominator, p, tol)
    if not analysis.hypotheses_hold:
        reason = ("a root of D lies inside |x| = 1/p" if not analysis.no_roots_inside
                  else "a root of D on |x| = 1/p is not simple")
        if strict:
            raise HypothesisFailure(reason)
        return FrequencyReport(p, analysis, (), reason)

    circ = analysis.circle_roots
    exact_pm = all(r.exact for r in circ)
    verdicts = []
    for d, P in zip(L.letters, L.numerators):
        terms = tuple((oscillation_coefficient(P, r), r.theta) for r in circ)
        if analysis.corollary_case:
            verdicts.append(LetterVerdict(d, "limit", terms, limit=terms[0][0]))
        elif exact_pm:
            plus = sum((c for (c, _), r in zip(terms, circ) if r.value > 0), Fraction(0))
            minus = sum((c for (c, _), r in zip(terms, circ) if r.value < 0), Fraction(0))
            verdicts.append(LetterVerdict(d, "even/odd", terms, even=plus + minus,
                                          odd=plus - minus))
        else:
            verdicts.append(LetterVerdict(d, "oscillation", terms))
    return FrequencyReport(p, analysis, tuple(verdicts))


def corollary_limits(L: RationalFunction, p: int) -> dict[str, Fraction]:
    """``P_d(1/p) / sum_e P_e(1/p)`` for every letter."""
    if not L.univariate:
        L = L.specialize()
    x = Fraction(1, p)
    vals = {d: Fraction(P(x)) for d, P in zip(L.letters, L.numerators)}
    total = sum(vals.values())
    return {d: v / total for d, v in vals.items()}


# -- direct counting -------------------------------------------------------------


@dataclass(frozen=True)
class EmpiricalCounts:
    """Letter counts among ``a_1..a_{p^n - 1}`` (``below``) and ``a_1..a_{p^n}``
    (``upto``)."""

    p: int
    n: int
    below: dict[str, int]
    upto: dict[str, int]

    def ratio(self, letter: str, convention: str = "upto") -> Fraction:
        counts = self.upto if convention == "upto" else self.below
        return Fraction(counts[letter], self.p**self.n)


def empirical_counts(aut: Automaton, n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> EmpiricalCounts:
    """Count letters by walking all digit strings of length ``<= n`` level by level.

    Level ``k`` holds the states reached from the initial state after every
    string of ``k`` digits; extending by a nonzero digit gives exactly the
    integers of length ``k + 1``.
    """
    p = aut.p
    if n < 1:
        raise ValueError("n must be >= 1")
    if p**n > bound:
        raise EnumerationBound(f"p^n = {p}^{n} exceeds the enumeration bound {bound}", bound=bound)
    delta = np.asarray(aut.delta, dtype=np.int64)
    tau = np.asarray(aut.tau, dtype=np.int64)
    totals = np.zeros(len(aut.alphabet), dtype=np.int64)
    level = np.array([aut.initial], dtype=np.int64)
    for k in range(n):
        for d in range(1, p):
            totals += np.bincount(tau[delta[level, d]], minlength=len(aut.alphabet))
        if k + 1 < n:
            level = delta[level].reshape(-1)
    below = {a: int(c) for a, c in zip(aut.alphabet, totals)}
    upto = dict(below)
    last = aut.label(aut.run(aut.initial, [0] * n + [1]))
    upto[last] += 1
    return EmpiricalCounts(p, n, below, upto)


def empirical_comparison(aut: Automaton, report: FrequencyReport, ns: Sequence[int]) -> list[dict]:
    """Empirical ratios ``a[p^n, d] / p^n`` next to the predicted values."""
    rows = []
    for n in ns:
        counts = empirical_counts(aut, n)
        for v in report.letters:
            pred = v.predicted(n)
            emp = counts.ratio(v.letter)
            rows.append({"n": n, "letter": v.letter, "empirical": emp, "predicted": pred,
                         "error": abs(float(emp) - float(pred))})
    return rows
