"""Independent oracles used by the tests.

Nothing here imports the package under test.
"""

from __future__ import annotations

from math import comb


def apery(n: int) -> int:
    """A(n) = sum_k C(n,k)^2 C(n+k,k)^2, exact."""
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def thue_morse_letter(n: int) -> str:
    # calibrated on the prefix B,B,A,B,A,A,B,B for n = 1..8
    return "B" if bin(n).count("1") % 2 else "A"


def leading_digit(n: int, p: int) -> str:
    while n >= p:
        n //= p
    return str(n)


def digit_weight_series(seq, p: int, length: int):
    """sum over n < p^length of a_n * prod_i x_i^{#digits i of n} as a sympy
    expression in x0..x_{p-1} with letters as symbols."""
    import sympy as sp

    xs = sp.symbols(f"x0:{p}")
    total = 0
    for n in range(1, p**length):
        m, mono = n, 1
        while m:
            m, d = divmod(m, p)
            mono *= xs[d]
        total += sp.Symbol(seq(n)) * mono
    return sp.expand(total), xs


def truncate_total_degree(expr, xs, degree: int):
    import sympy as sp

    poly = sp.Poly(expr, *xs)
    keep = [(m, c) for m, c in poly.terms() if sum(m) <= degree]
    return sp.expand(sum(c * sp.prod([x**e for x, e in zip(xs, m)]) for m, c in keep))
