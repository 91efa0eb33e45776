"""The rational fractions ``L(a, x_0, ..., x_{p-1})`` and ``L(a, x)``.

For every vertex ``u`` of ``Gamma(a)``, splitting the indices by their
last digit gives

    L_u = sum_{s >= 1} u_s x_s + sum_{i >= 0} x_i L_{u^{t_i}},

i.e. ``(I - M) Lambda = C`` with ``M`` the weighted adjacency matrix.  The
system is solved exactly by fraction-free (Bareiss) elimination; numerators
are kept per letter, so ``L_u = sum_d d * P_d / D`` with letter-free
polynomials ``P_d`` and ``D``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence, Union

from .errors import Cancelled, SingularSystem, SizeLimitExceeded, ZeroConstantTerm
from .kernel import KernelGraph
from .poly import MPoly, Poly

DEFAULT_SOLVE_BOUND = 64

Polynomial = Union[Poly, MPoly]


class CancelToken:
    """Cooperative cancellation flag polled by the elimination loops."""

    def __init__(self):
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def check(self) -> None:
        if self._event.is_set():
            raise Cancelled("linear solve cancelled")


# -- linear algebra ------------------------------------------------------------


def bareiss_solve(matrix, rhs, token: CancelToken | None = None):
    """Solve ``matrix * X = rhs`` over an integral domain without fractions.

    ``matrix`` is ``n x n`` and ``rhs`` is ``n x r`` (lists of ring elements
    supporting ``+ - *``, ``exact_div`` and ``is_zero``).  Returns
    ``(det, numerators)`` with ``X = numerators / det``.
    """
    n = len(matrix)
    r = len(rhs[0]) if rhs else 0
    a = [list(matrix[i]) + list(rhs[i]) for i in range(n)]
    sign = 1
    prev = None
    for k in range(n):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                raise SingularSystem("matrix is singular")
        for i in range(k + 1, n):
            if token is not None:
                token.check()
            for j in range(k + 1, n + r):
                v = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = v if prev is None else v.exact_div(prev)
            a[i][k] = a[i][k] * 0
        prev = a[k][k]
    det = a[n - 1][n - 1]
    # back substitution: x_i = (det * b_i - sum_{j > i} a_ij x_j) / a_ii
    sol = [[None] * r for _ in range(n)]
    for c in range(r):
        for i in range(n - 1, -1, -1):
            if token is not None:
                token.check()
            acc = det * a[i][n + c]
            for j in range(i + 1, n):
                acc = acc - a[i][j] * sol[j][c]
            sol[i][c] = acc.exact_div(a[i][i])
    if sign < 0:
        det = -det
        sol = [[-v for v in row] for row in sol]
    return det, sol


# -- rational functions --------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """``sum_d d * numerators[d] / denominator`` with letter-free polynomials.

    Letters are opaque symbols.  ``variables`` names the polynomial
    variables (``("x",)`` for the univariate fraction).
    """

    variables: tuple[str, ...]
    letters: tuple[str, ...]
    numerators: tuple[Polynomial, ...]
    denominator: Polynomial

    @property
    def univariate(self) -> bool:
        return isinstance(self.denominator, Poly)

    def numerator(self, letter: str) -> Polynomial:
        return self.numerators[self.letters.index(letter)]

    def canonical(self) -> "RationalFunction":
        """Reduce by the common gcd (univariate only), then scale so that all
        coefficients are coprime integers and the leading coefficient of the
        denominator is positive."""
        nums = list(self.numerators)
        den = self.denominator
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if self.univariate:
            g = reduce(lambda acc, q: acc.gcd(q), nums, den)
            if g.degree > 0:
                nums = [q.exact_div(g) for q in nums]
                den = den.exact_div(g)
        contents = [q.content() for q in nums + [den] if not q.is_zero()]
        den_lcm = reduce(lcm, (c.denominator for c in contents), 1)
        num_gcd = reduce(gcd, (c.numerator * (den_lcm // c.denominator) for c in contents), 0)
        scale = Fraction(den_lcm, num_gcd)
        lead = den.lc if self.univariate else den.leading()[1]
        if lead < 0:
            scale = -scale
        return RationalFunction(
            self.variables, self.letters, tuple(q.scale(scale) for q in nums), den.scale(scale)
        )

    def _key(self):
        c = self.canonical()
        return c.variables, c.letters, c.numerators, c.denominator

    def __eq__(self, other):
        return isinstance(other, RationalFunction) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def equal_up_to_scalar(self, other: "RationalFunction") -> bool:
        """True when ``self == lambda * other`` for a nonzero rational ``lambda``
        (cross-multiplied comparison; no canonical form needed)."""
        if self.letters != other.letters:
            return False
        ratio = None
        for p1, p2 in zip(self.numerators, other.numerators):
            a = p1 * other.denominator
            b = p2 * self.denominator
            if a.is_zero() != b.is_zero():
                return False
            if a.is_zero():
                continue
            r = _poly_ratio(a, b)
            if r is None or (ratio is not None and r != ratio):
                return False
            ratio = r
        return True

    def specialize(self) -> "RationalFunction":
        """Set all variables equal to ``x`` and reduce."""
        if self.univariate:
            return self.canonical()
        return RationalFunction(
            ("x",), self.letters,
            tuple(q.specialize() for q in self.numerators),
            self.denominator.specialize(),
        ).canonical()

    def permute_letters(self, phi: dict[str, str]) -> "RationalFunction":
        """Apply the letter map ``phi`` (letters missing from ``phi`` are fixed)."""
        zero = self.denominator * 0
        acc = {d: zero for d in self.letters}
        for d, q in zip(self.letters, self.numerators):
            tgt = phi.get(d, d)
            acc[tgt] = acc[tgt] + q
        return RationalFunction(self.variables, self.letters,
                                tuple(acc[d] for d in self.letters), self.denominator)

    def format(self) -> str:
        fmt = _formatter(self)
        parts = [f"({d})*({fmt(q)})" for d, q in zip(self.letters, self.numerators)
                 if not q.is_zero()]
        num = " + ".join(parts) if parts else "0"
        return f"[{num}] / ({fmt(self.denominator)})"

    def __str__(self):
        return self.format()

    def to_json(self) -> dict:
        if self.univariate:
            enc = lambda q: [_q(c) for c in q.coeffs]  # noqa: E731
        else:
            enc = lambda q: [[list(e), _q(c)] for e, c in q.coefficient_list()]  # noqa: E731
        return {
            "variables": list(self.variables),
            "numerators": {d: enc(q) for d, q in zip(self.letters, self.numerators)},
            "denominator": enc(self.denominator),
            "text": self.format(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        variables = tuple(data["variables"])
        letters = tuple(data["numerators"])
        if len(variables) == 1 and variables == ("x",) and _is_dense(data["denominator"]):
            dec = lambda v: Poly(Fraction(c) for c in v)  # noqa: E731
        else:
            n = len(variables)
            dec = lambda v: MPoly(n, {tuple(e): _norm_q(c) for e, c in v})  # noqa: E731
        return cls(variables, letters, tuple(dec(data["numerators"][d]) for d in letters),
                   dec(data["denominator"]))


def _is_dense(v) -> bool:
    return all(not isinstance(c, list) for c in v)


def _q(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _norm_q(s):
    f = Fraction(s)
    return int(f) if f.denominator == 1 else f


def _formatter(rf: RationalFunction):
    if rf.univariate:
        return lambda q: q.format(rf.variables[0])
    return lambda q: q.format(rf.variables)


def _poly_ratio(a: Polynomial, b: Polynomial):
    """``lambda`` with ``a == lambda * b`` or ``None``."""
    if isinstance(a, Poly):
        if a.degree != b.degree:
            return None
        r = Fraction(a.lc) / Fraction(b.lc)
        return r if a == b.scale(r) else None
    ea, ca = a.leading()
    eb, cb = b.leading()
    if ea != eb:
        return None
    r = Fraction(ca) / Fraction(cb)
    return r if a == b.scale(r) else None


# -- the system (I - M) Lambda = C -----------------------------------------------


@dataclass(frozen=True)
class SystemData:
    """Matrices of ``(I - M) Lambda = C`` in the vertex order of ``Gamma(a)``.

    ``M[u][v]`` is the set of digits ``i`` with ``u^{t_i} = v`` (the entry is
    their sum of ``x_i``); ``C[u]`` maps each digit ``s >= 1`` to the letter
    ``u_s``; ``A`` is ``M`` at ``x_i = 1`` and ``T[u]`` counts letters in
    ``u_1 + ... + u_{p-1}``.
    """

    p: int
    alphabet: tuple[str, ...]
    M: tuple[tuple[tuple[int, ...], ...], ...]
    C: tuple[tuple[str, ...], ...]

    @property
    def size(self) -> int:
        return len(self.M)

    @property
    def A(self) -> list[list[int]]:
        return [[len(e) for e in row] for row in self.M]

    @property
    def T(self) -> list[dict[str, int]]:
        out = []
        for row in self.C:
            counts: dict[str, int] = {}
            for d in row:
                counts[d] = counts.get(d, 0) + 1
            out.append({d: counts[d] for d in self.alphabet if d in counts})
        return out

    def M_poly(self) -> list[list[MPoly]]:
        return [[_linear_form(self.p, digits) for digits in row] for row in self.M]

    def C_forms(self) -> list[dict[str, MPoly]]:
        out = []
        for row in self.C:
            forms: dict[str, MPoly] = {}
            for s, d in enumerate(row, 1):
                forms[d] = forms.get(d, MPoly(self.p)) + MPoly.var(self.p, s)
            out.append(forms)
        return out

    def format_M(self, names: Sequence[str]) -> list[list[str]]:
        return [[" + ".join(names[i] for i in digits) or "0" for digits in row]
                for row in self.M]

    def format_C(self, names: Sequence[str]) -> list[str]:
        return [" + ".join(f"{names[s]}*{d}" for s, d in enumerate(row, 1)) or "0"
                for row in self.C]

    def format_T(self) -> list[str]:
        return [" + ".join(d if k == 1 else f"{k}*{d}" for d, k in t.items()) or "0"
                for t in self.T]


def _linear_form(p: int, digits: Sequence[int]) -> MPoly:
    out = MPoly(p)
    for i in digits:
        out = out + MPoly.var(p, i)
    return out


def system_data(graph: KernelGraph) -> SystemData:
    n = graph.size
    M = [[[] for _ in range(n)] for _ in range(n)]
    for i in range(graph.p):
        for u in range(n):
            M[u][graph.gen[i][u]].append(i)
    C = tuple(tuple(graph.alphabet[t] for t in ft) for ft in graph.first_terms)
    return SystemData(graph.p, graph.alphabet,
                      tuple(tuple(tuple(e) for e in row) for row in M), C)


def default_variable_names(p: int) -> tuple[str, ...]:
    if p == 2:
        return ("x", "y")
    return tuple(f"x{i}" for i in range(p))


@dataclass(frozen=True)
class Solution:
    """All the fractions ``Lambda_u`` of one solve, sharing one denominator."""

    variables: tuple[str, ...]
    letters: tuple[str, ...]
    determinant: Polynomial
    numerators: tuple[tuple[Polynomial, ...], ...]  # [vertex][letter]

    def fraction(self, u: int) -> RationalFunction:
        return RationalFunction(self.variables, self.letters, self.numerators[u],
                                self.determinant).canonical()


def solve_multivariate(graph: KernelGraph, bound: int = DEFAULT_SOLVE_BOUND,
                       token: CancelToken | None = None, check: bool = True) -> Solution:
    """Solve ``(I - M) Lambda = C`` in ``Q(x_0, ..., x_{p-1})``."""
    if graph.size * graph.p > bound:
        raise SizeLimitExceeded(
            f"|vertices| * p = {graph.size * graph.p} exceeds the bound {bound}", bound=bound
        )
    data = system_data(graph)
    p, n = graph.p, graph.size
    one = MPoly.const(p, 1)
    Mp = data.M_poly()
    lhs = [[(one if u == v else MPoly(p)) - Mp[u][v] for v in range(n)] for u in range(n)]
    forms = data.C_forms()
    rhs = [[forms[u].get(d, MPoly(p)) for d in graph.alphabet] for u in range(n)]
    det, sol = bareiss_solve(lhs, rhs, token)
    if det.is_zero():
        raise SingularSystem("det(I - M) vanished")
    if check:
        _check_solution(lhs, rhs, det, sol)
    return Solution(default_variable_names(p), graph.alphabet, det,
                    tuple(tuple(row) for row in sol))


def solve_univariate(graph: KernelGraph, token: CancelToken | None = None,
                     check: bool = True) -> Solution:
    """Solve ``(I - xA) Lambda = xT`` in ``Q(x)``."""
    data = system_data(graph)
    n = graph.size
    A = data.A
    x = Poly.x()
    lhs = [[Poly.const(1 if u == v else 0) - x.scale(A[u][v]) for v in range(n)]
           for u in range(n)]
    T = data.T
    rhs = [[x.scale(T[u].get(d, 0)) for d in graph.alphabet] for u in range(n)]
    det, sol = bareiss_solve(lhs, rhs, token)
    if det.is_zero():
        raise SingularSystem("det(I - xA) vanished")
    if check:
        _check_solution(lhs, rhs, det, sol)
    return Solution(("x",), graph.alphabet, det, tuple(tuple(row) for row in sol))


def _check_solution(lhs, rhs, det, sol) -> None:
    """Exact back-substitution: ``lhs * sol == det * rhs``."""
    n = len(lhs)
    for c in range(len(rhs[0]) if rhs else 0):
        for u in range(n):
            acc = det * 0
            for v in range(n):
                acc = acc + lhs[u][v] * sol[v][c]
            if acc != det * rhs[u][c]:
                raise SingularSystem("back-substitution check failed")


def L_multivariate(graph: KernelGraph, vertex: int | None = None, **kw) -> RationalFunction:
    u = graph.base if vertex is None else vertex
    return solve_multivariate(graph, **kw).fraction(u)


def L_univariate(graph: KernelGraph, vertex: int | None = None, **kw) -> RationalFunction:
    u = graph.base if vertex is None else vertex
    return solve_univariate(graph, **kw).fraction(u)


# -- series expansion ------------------------------------------------------------


@dataclass(frozen=True)
class SeriesCounts:
    """``coefficients[d][n-1]`` is ``m_{d,n}``: the number of integers of
    length ``n`` whose term is ``d``.  ``partial[d][n-1]`` sums these over
    lengths ``1..n``, i.e. counts ``d`` among ``a_1, ..., a_{p^n - 1}``."""

    letters: tuple[str, ...]
    coefficients: dict[str, list[int]]
    partial: dict[str, list[int]]

    def totals(self) -> list[int]:
        n_max = len(next(iter(self.coefficients.values()), []))
        return [sum(self.coefficients[d][k] for d in self.letters) for k in range(n_max)]


def series_coefficients(num: Poly, den: Poly, n_max: int) -> list:
    """Coefficients ``s_0..s_{n_max}`` of ``num / den`` via the recurrence
    ``den_0 s_n = num_n - sum_{k>=1} den_k s_{n-k}``."""
    d0 = den[0]
    if d0 == 0:
        raise ZeroConstantTerm("D(0) = 0: the series has no power series expansion")
    out = []
    for n in range(n_max + 1):
        acc = Fraction(num[n])
        for k in range(1, min(n, den.degree) + 1):
            acc -= den[k] * out[n - k]
        v = acc / d0
        out.append(int(v) if v.denominator == 1 else v)
    return out


def series_counts(L: RationalFunction, n_max: int) -> SeriesCounts:
    if not L.univariate:
        L = L.specialize()
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    coeffs, partial = {}, {}
    for d, num in zip(L.letters, L.numerators):
        s = series_coefficients(num, L.denominator, n_max)[1:]
        coeffs[d] = s
        run, acc = [], 0
        for v in s:
            acc += v
            run.append(acc)
        partial[d] = run
    return SeriesCounts(L.letters, coeffs, partial)
