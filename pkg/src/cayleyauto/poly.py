"""Exact polynomials with rational coefficients.

``Poly`` is univariate (dense coefficient tuple, lowest degree first) and
carries the gcd machinery; ``MPoly`` is a sparse multivariate polynomial
keyed by exponent tuples, ordered by graded lexicographic order.
Coefficients are ``int`` or ``Fraction``; integral values are kept as
``int`` so that fraction-free elimination stays in integer arithmetic.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _norm(Fraction(a) / b)


def _fmt_coeff(c) -> str:
    return str(c) if isinstance(c, int) or c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_terms(terms: list[tuple[object, str]]) -> str:
    """Join ``(coeff, monomial)`` pairs as ``3x^2 - x + 1``."""
    if not terms:
        return "0"
    out = []
    for k, (c, mono) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if mono and a == 1:
            body = mono
        elif mono:
            txt = _fmt_coeff(a)
            body = f"({txt}){mono}" if "/" in txt else f"{txt}{mono}"
        else:
            body = _fmt_coeff(a)
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class Poly:
    """Univariate polynomial over Q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_norm(Fraction(c)) if not isinstance(c, int) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self.format()!r})"

    def __str__(self):
        return self.format()

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "Poly":
        return Poly(c * a for a in self.coeffs)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lc
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = _div(c, lead)
            quot[k - dq] = q
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= q * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else ())

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        return self.scale(Fraction(1) / self.lc) if self.coeffs else self

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` integral and primitive."""
        if not self.coeffs:
            return Fraction(1)
        fr = [Fraction(c) for c in self.coeffs]
        den = reduce(lcm, (f.denominator for f in fr), 1)
        num = reduce(gcd, (f.numerator * (den // f.denominator) for f in fr), 0)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integral, content 1, positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return self.scale(1 / c)

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (zero if both are zero)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_decomposition(self) -> list[tuple["Poly", int]]:
        """Yun's algorithm: ``self = lc * prod f_k^k`` with the ``f_k`` monic,
        squarefree and pairwise coprime.  Only factors of positive degree
        are returned."""
        if self.degree < 1:
            return []
        f = self.monic()
        out = []
        df = f.derivative()
        a = f.gcd(df)
        b = f.exact_div(a)
        c = df.exact_div(a)
        d = c - b.derivative()
        k = 1
        while b.degree > 0:
            g = b.gcd(d)
            if g.degree > 0:
                out.append((g, k))
            b = b.exact_div(g)
            c = d.exact_div(g)
            d = c - b.derivative()
            k += 1
        return out

    def squarefree_part(self) -> "Poly":
        return reduce(lambda acc, fk: acc * fk[0], self.squarefree_decomposition(), Poly.const(1))

    def rational_roots(self) -> list[Fraction]:
        """Distinct rational roots, in increasing order."""
        if self.is_zero():
            raise ValueError("the zero polynomial has every root")
        prim = self.primitive()
        cs = list(prim.coeffs)
        roots = []
        if cs and cs[0] == 0:
            roots.append(Fraction(0))
            while cs and cs[0] == 0:
                cs.pop(0)
        if len(cs) <= 1:
            return sorted(roots)
        lead, const = abs(cs[-1]), abs(cs[0])
        red = Poly(cs)
        for num in _divisors(const):
            for den in _divisors(lead):
                if gcd(num, den) != 1:
                    continue
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if red(cand) == 0:
                        roots.append(cand)
        return sorted(set(roots))

    def reciprocal(self) -> "Poly":
        """``x^deg * self(1/x)``."""
        return Poly(reversed(self.coeffs))

    def compose_scale(self, c) -> "Poly":
        """``self(c x)``."""
        return Poly(a * c**k for k, a in enumerate(self.coeffs))

    def format(self, var: str = "x") -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            terms.append((c, mono))
        return _format_terms(terms)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class MPoly:
    """Sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: _norm(c) for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, k: int, c=1) -> "MPoly":
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): c})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self) -> tuple[tuple[int, ...], object]:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.nvars, other)
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"MPoly({self.format()!r})"

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Rational)):
            return MPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return MPoly(self.nvars, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        return MPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Quotient of an exact division; raises if a remainder is left."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = other.leading()
        rem = dict(self.terms)
        heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
        heapq.heapify(heap)
        quot: dict = {}
        while heap:
            neg_deg, neg_e = heapq.heappop(heap)
            e = tuple(-x for x in neg_e)
            c = rem.get(e, 0)
            if c == 0:
                rem.pop(e, None)
                continue
            shift = tuple(a - b for a, b in zip(e, le))
            if any(s < 0 for s in shift):
                raise ArithmeticError("inexact multivariate division")
            q = _div(c, lc)
            quot[shift] = q
            for e2, c2 in other.terms.items():
                t = tuple(a + b for a, b in zip(shift, e2))
                new = rem.get(t, 0) - q * c2
                if t not in rem:
                    heapq.heappush(heap, (-sum(t), tuple(-x for x in t)))
                rem[t] = new
            # the leading term cancels exactly
            rem.pop(e, None)
        if any(v != 0 for v in rem.values()):
            raise ArithmeticError("inexact multivariate division")
        return MPoly(self.nvars, quot)

    def __call__(self, *values):
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            total += term
        return total

    def specialize(self) -> Poly:
        """Set every variable equal to a single variable ``x``."""
        out: dict[int, object] = {}
        for e, c in self.terms.items():
            d = sum(e)
            out[d] = out.get(d, 0) + c
        top = max(out, default=-1)
        return Poly(out.get(k, 0) for k in range(top + 1))

    def content(self) -> Fraction:
        if not self.terms:
            return Fraction(1)
        fr = [Fraction(c) for c in self.terms.values()]
        den = reduce(lcm, (f.denominator for f in fr), 1)
        num = reduce(gcd, (f.numerator * (den // f.denominator) for f in fr), 0)
        return Fraction(num, den)

    def coefficient_list(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda ec: grlex_key(ec[0]), reverse=True)

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{k}" for k in range(self.nvars)]
        terms = []
        for e, c in self.coefficient_list():
            parts = []
            for name, k in zip(names, e):
                if k == 1:
                    parts.append(name)
                elif k > 1:
                    parts.append(f"{name}^{k}")
            terms.append((c, "*".join(parts)))
        return _format_terms(terms)

    def __str__(self):
        return self.format()
