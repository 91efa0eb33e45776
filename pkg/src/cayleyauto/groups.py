"""Permutation groups and the automata built from them.

Products follow the right-action convention used throughout: ``g * h``
means "first ``g``, then ``h``", so that ``q^(gh) = (q^g)^h``.
Permutations are written in cycle notation on the points ``1..m``.
"""

from __future__ import annotations

import re
from functools import cached_property
from typing import Mapping, Sequence

from .core import Automaton
from .errors import NotSubgroup, PermutationError, SizeLimitExceeded, UnknownCorpus

DEFAULT_GROUP_BOUND = 10**6


class Permutation:
    """A bijection of ``{0, ..., m-1}`` stored as its image tuple.

    Printing and parsing use 1-based cycle notation.
    """

    __slots__ = ("image",)

    def __init__(self, image: Sequence[int]):
        image = tuple(image)
        if sorted(image) != list(range(len(image))):
            raise PermutationError(f"not a permutation: {image}")
        self.image = image

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse ``"(1,5,4,6,2,3)"`` or ``"(1,3)(2,4)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+\s*(,\s*\d+\s*)*)?\)\s*)+", text):
            raise PermutationError(f"bad cycle notation: {text!r}")
        cycles = [
            [int(x) for x in body.split(",")] if body.strip() else []
            for body in re.findall(r"\(([^)]*)\)", text)
        ]
        points = [x for c in cycles for x in c]
        if any(x < 1 for x in points) or len(set(points)) != len(points):
            raise PermutationError(f"cycles must use distinct points >= 1: {text!r}")
        top = max(points, default=0)
        if degree is None:
            degree = top
        elif top > degree:
            raise PermutationError(f"point {top} exceeds degree {degree}")
        image = list(range(degree))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                image[a - 1] = b - 1
        return cls(image)

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, point: int) -> int:
        return self.image[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # first self, then other
        return Permutation(other.image[x] for x in self.image)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.image))

    def order(self) -> int:
        k, g = 1, self
        while not g.is_identity():
            g = g * self
            k += 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(len(self.image)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.image[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.image[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({str(self)!r})"

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self):
        return hash(self.image)


def parse_permutations(texts: Sequence[str], degree: int | None = None) -> list[Permutation]:
    """Parse several cycle strings onto a common point set."""
    if degree is None:
        degree = max(Permutation.from_cycles(t).degree for t in texts)
    return [Permutation.from_cycles(t, degree) for t in texts]


class PermGroup:
    """The group generated by ``gens``, with its full element list.

    ``gens[i]`` plays the role of ``t_i``.  Elements are listed in BFS order
    from the identity (right multiplication by generators, digits in
    increasing order); ``words[k]`` is a shortest generator word for
    ``elements[k]``.
    """

    def __init__(self, gens: Sequence[Permutation], bound: int = DEFAULT_GROUP_BOUND):
        if not gens:
            raise PermutationError("need at least one generator")
        degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise PermutationError("generators act on different point sets")
        self.gens = tuple(gens)
        self.degree = degree
        e = Permutation.identity(degree)
        self.elements = [e]
        self.words: list[tuple[int, ...]] = [()]
        self.index = {e: 0}
        for k, g in enumerate(self.elements):
            for i, t in enumerate(self.gens):
                h = g * t
                if h not in self.index:
                    if len(self.elements) >= bound:
                        raise SizeLimitExceeded(
                            f"group has more than {bound} elements", bound=bound
                        )
                    self.index[h] = len(self.elements)
                    self.elements.append(h)
                    self.words.append(self.words[k] + (i,))

    @classmethod
    def from_cycles(cls, texts: Sequence[str], degree: int | None = None, **kw) -> "PermGroup":
        return cls(parse_permutations(texts, degree), **kw)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def __contains__(self, g: Permutation) -> bool:
        return g in self.index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def evaluate_word(self, word: Sequence[int]) -> Permutation:
        g = self.identity
        for i in word:
            g = g * self.gens[i]
        return g

    @cached_property
    def is_abelian(self) -> bool:
        return all(a * b == b * a for a in self.gens for b in self.gens)

    @cached_property
    def is_cyclic(self) -> bool:
        return any(g.order() == self.order for g in self.elements)

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        out = [point]
        for x in out:
            for t in self.gens:
                y = t(x)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    @cached_property
    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    @property
    def is_faithful(self) -> bool:
        # a group of permutations of the given points acts faithfully on them
        return True

    def element_orders(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.elements:
            k = g.order()
            out[k] = out.get(k, 0) + 1
        return out

    def is_subgroup(self, elements: Sequence[Permutation]) -> bool:
        s = set(elements)
        if self.identity not in s or not s <= set(self.index):
            return False
        return all(a * b in s for a in s for b in s)

    def subgroup(self, gens: Sequence[Permutation]) -> list[Permutation]:
        """Closure of ``gens`` inside this group (identity included)."""
        out = [self.identity]
        seen = set(out)
        for g in out:
            for t in gens:
                h = g * t
                if h not in seen:
                    seen.add(h)
                    out.append(h)
        return out

    def is_normal(self, elements: Sequence[Permutation]) -> bool:
        s = set(elements)
        return all(t.inverse() * h * t in s for h in s for t in self.gens)

    def core(self, elements: Sequence[Permutation]) -> list[Permutation]:
        """Intersection of all conjugates ``g^-1 K g``."""
        s = set(elements)
        for g in self.elements:
            gi = g.inverse()
            s &= {gi * k * g for k in elements}
        return [g for g in self.elements if g in s]

    def left_cosets(self, elements: Sequence[Permutation]) -> list[list[int]]:
        """Left cosets ``gK`` as lists of element indices, ordered by smallest index."""
        seen: set[int] = set()
        cosets = []
        for k, g in enumerate(self.elements):
            if k in seen:
                continue
            coset = sorted(self.index[g * h] for h in elements)
            seen.update(coset)
            cosets.append(coset)
        return cosets


def small_generating_set(group: PermGroup, elements: Sequence[Permutation]) -> list[Permutation]:
    """Greedy generating set for the subgroup formed by ``elements``."""
    gens: list[Permutation] = []
    span = {group.identity}
    for g in sorted(elements, key=lambda h: group.index.get(h, 0)):
        if g not in span:
            gens.append(g)
            span = set(group.subgroup(gens))
    return gens


# -- automata from groups ----------------------------------------------------


def schreier_automaton(
    gens: Sequence[Permutation],
    q0: int,
    tau: Sequence[str] | Mapping[int, str],
    names: Sequence[str] | None = None,
    alphabet: Sequence[str] | None = None,
) -> Automaton:
    """Automaton on the points acted on by ``gens``: ``delta(q, i) = q^{t_i}``.

    ``q0`` and the keys of ``tau`` are 0-based points; state names default to
    the 1-based point numbers.
    """
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise PermutationError("generators act on different point sets")
    labels = [tau[q] for q in range(degree)]
    if names is None:
        names = [str(q + 1) for q in range(degree)]
    if alphabet is None:
        alphabet = list(dict.fromkeys(labels))
    letter = {a: k for k, a in enumerate(alphabet)}
    delta = tuple(tuple(g(q) for g in gens) for q in range(degree))
    return Automaton(len(gens), tuple(names), tuple(alphabet), delta,
                     tuple(letter[a] for a in labels), q0)


def element_name(k: int) -> str:
    return f"g{k}"


def cayley_automaton(group: PermGroup, K: Sequence[Permutation] | None = None) -> Automaton:
    """Cayley graph of ``group`` labelled by the natural map ``G -> G/K``.

    States are the group elements (``g`` goes to ``g t_i`` under the digit
    ``i``), the initial state is the identity and each state is labelled by
    its left coset ``gK``, named after the coset's first element.
    """
    if K is None:
        K = [group.identity]
    if not group.is_subgroup(K):
        raise NotSubgroup("K is not a subgroup of the group")
    trivial = len(K) == 1
    cosets = group.left_cosets(K)
    label_of = {}
    alphabet = []
    for coset in cosets:
        sym = element_name(coset[0]) + ("" if trivial else "K")
        alphabet.append(sym)
        for k in coset:
            label_of[k] = len(alphabet) - 1
    n = group.order
    delta = tuple(
        tuple(group.index[g * t] for t in group.gens) for g in group.elements
    )
    return Automaton(
        len(group.gens),
        tuple(element_name(k) for k in range(n)),
        tuple(alphabet),
        delta,
        tuple(label_of[k] for k in range(n)),
        0,
    )


# -- built-in corpus ---------------------------------------------------------

APERY_GENERATORS = (
    "()",
    "(1,5,4,6,2,3)",
    "(1,3,2,6,4,5)",
    "(1,3,2,6,4,5)",
    "(1,3,2,6,4,5)",
    "(1,5,4,6,2,3)",
    "()",
)

QUATERNION_GENERATORS = ("(1,3,4,7)(5,6,8,2)", "(1,2,4,6)(5,3,8,7)")

# rotation and a diagonal reflection of the square with corners 1..4
DIHEDRAL_GENERATORS = ("(1,2,3,4)", "(2,4)")

CORPUS_NAMES = ("thue_morse", "apery_mod7", "quaternion_fig3", "leftmost_digit_p<p>",
                "dihedral_square")


def thue_morse() -> Automaton:
    return Automaton(2, ("a", "b"), ("A", "B"), ((0, 1), (1, 0)), (0, 1), 0)


def apery_mod7() -> Automaton:
    gens = parse_permutations(APERY_GENERATORS, 6)
    return schreier_automaton(gens, 0, [f"d{k}" for k in range(1, 7)])


def quaternion_fig3() -> Automaton:
    gens = parse_permutations(QUATERNION_GENERATORS, 8)
    return schreier_automaton(gens, 5, [f"d{k}" for k in range(1, 9)])


def leftmost_digit(p: int) -> Automaton:
    """Minimal automaton for ``a_n`` = leading base-``p`` digit of ``n``.

    The leading digit is the last one read, so the state only has to remember
    the last nonzero digit; a zero keeps the state unchanged.
    """
    if p < 2:
        raise UnknownCorpus(f"leftmost_digit needs p >= 2, got {p}")
    names = tuple(f"s{d}" for d in range(1, p))
    delta = tuple(tuple(q if i == 0 else i - 1 for i in range(p)) for q in range(p - 1))
    return Automaton(p, names, tuple(str(d) for d in range(1, p)), delta,
                     tuple(range(p - 1)), 0)


def dihedral_square() -> Automaton:
    gens = parse_permutations(DIHEDRAL_GENERATORS, 4)
    return schreier_automaton(gens, 0, [f"c{k}" for k in range(1, 5)])


def corpus(name: str) -> Automaton:
    """Built-in automata: ``thue_morse``, ``apery_mod7``, ``quaternion_fig3``,
    ``leftmost_digit_p<p>`` (e.g. ``leftmost_digit_p3``) and ``dihedral_square``."""
    simple = {
        "thue_morse": thue_morse,
        "apery_mod7": apery_mod7,
        "quaternion_fig3": quaternion_fig3,
        "dihedral_square": dihedral_square,
    }
    if name in simple:
        return simple[name]()
    m = re.fullmatch(r"leftmost_digit(?:_p|\()(\d+)\)?", name)
    if m:
        return leftmost_digit(int(m.group(1)))
    raise UnknownCorpus(f"unknown corpus automaton {name!r}; known: {', '.join(CORPUS_NAMES)}")


def corpus_all() -> dict[str, Automaton]:
    """Every corpus entry, with ``leftmost_digit`` at p = 2 and p = 3."""
    names = ["thue_morse", "apery_mod7", "quaternion_fig3", "leftmost_digit_p2",
             "leftmost_digit_p3", "dihedral_square"]
    return {n: corpus(n) for n in names}
