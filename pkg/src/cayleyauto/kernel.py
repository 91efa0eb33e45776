"""The kernel ``N(a)``, the graph ``Gamma(a)`` and the monoid ``G(a)``.

Two states are identified when they produce the same sequence (from index
1).  Because the term of index ``n = s`` (a single digit) is the label of
``delta(q, s)``, the coarsest partition to refine is by the tuple of first
terms ``(tau(delta(q, s)))_{s=1..p-1}``; Moore refinement then yields the
sequence-equivalence classes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .core import AffineCode, Automaton, digits_lsb, word_to_affine
from .errors import InvalidAutomaton, SizeLimitExceeded

DEFAULT_MONOID_BOUND = 10**6


def _first_terms(aut: Automaton, q: int) -> tuple[int, ...]:
    return tuple(aut.tau[aut.delta[q][s]] for s in range(1, aut.p))


def kernel_partition(aut: Automaton) -> list[list[int]]:
    """Classes of reachable states producing identical sequences.

    Classes are listed by their smallest member; members are sorted.
    """
    states = sorted(aut.reachable())
    key = {q: _first_terms(aut, q) for q in states}
    count = len(set(key.values()))
    while True:
        cls = _renumber(key, states)
        key = {q: (cls[q],) + tuple(cls[r] for r in aut.delta[q]) for q in states}
        new_count = len(set(key.values()))
        if new_count == count:
            break
        count = new_count
    groups: dict = {}
    for q in states:
        groups.setdefault(key[q], []).append(q)
    return sorted(groups.values(), key=lambda c: c[0])


def _renumber(key: dict, states: Sequence[int]) -> dict[int, int]:
    ids: dict = {}
    return {q: ids.setdefault(key[q], len(ids)) for q in states}


def distinguishing_index(aut: Automaton, q: int, r: int) -> int | None:
    """Smallest-length index ``n`` with ``eval_from(q, n) != eval_from(r, n)``.

    Returns ``None`` when the two states produce the same sequence.  The
    search runs over pairs of states, so the witness has at most
    ``|Q|^2`` digits.
    """
    p = aut.p
    start = (q, r)
    seen = {start}
    queue = deque([(start, 0, 0)])  # pair, value of digits read, digit count
    while queue:
        (x, y), value, length = queue.popleft()
        for s in range(1, p):
            if aut.tau[aut.delta[x][s]] != aut.tau[aut.delta[y][s]]:
                return value + s * p**length
        for d in range(p):
            nxt = (aut.delta[x][d], aut.delta[y][d])
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, value + d * p**length, length + 1))
    return None


@dataclass(frozen=True)
class KernelGraph:
    """``Gamma(a)``: one vertex per distinct sequence in ``N(a)``.

    ``gen[i][u]`` is the vertex ``u^{t_i}``; ``first_terms[u][s-1]`` is the
    alphabet index of ``u_s`` for ``s = 1..p-1``; ``members[u]`` lists the
    automaton states producing ``u``.
    """

    p: int
    alphabet: tuple[str, ...]
    gen: tuple[tuple[int, ...], ...]
    first_terms: tuple[tuple[int, ...], ...]
    base: int
    members: tuple[tuple[int, ...], ...]
    source: Automaton = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.first_terms)

    @property
    def vertices(self) -> range:
        return range(self.size)

    @property
    def class_of(self) -> dict[int, int]:
        return {q: u for u, mem in enumerate(self.members) for q in mem}

    def step(self, u: int, word: Sequence[int]) -> int:
        for d in word:
            u = self.gen[d][u]
        return u

    def first_term(self, u: int, s: int) -> str:
        return self.alphabet[self.first_terms[u][s - 1]]

    def term(self, u: int, n: int) -> str:
        """Term ``u_n`` read directly off the graph."""
        *body, last = digits_lsb(n, self.p)
        return self.first_term(self.step(u, body), last)

    def sequence(self, u: int, count: int) -> list[str]:
        return [self.term(u, n) for n in range(1, count + 1)]

    def vertex_name(self, u: int) -> str:
        return "/".join(self.source.states[q] for q in self.members[u])

    def is_strongly_connected(self) -> bool:
        return all(len(self.reachable_from(u)) == self.size for u in self.vertices)

    def reachable_from(self, u: int) -> list[int]:
        seen = {u}
        order = [u]
        for x in order:
            for i in range(self.p):
                y = self.gen[i][x]
                if y not in seen:
                    seen.add(y)
                    order.append(y)
        return order

    def gen_is_bijective(self, i: int) -> bool:
        return len(set(self.gen[i])) == self.size


def build_kernel_graph(aut: Automaton, order: str = "bfs") -> KernelGraph:
    """Compute ``Gamma(a)`` for the sequence produced by ``aut``.

    ``order="bfs"`` numbers vertices by breadth-first search from the base
    vertex (digits in increasing order).  ``order="labels"`` sorts vertices
    by the alphabet position of their state label, which requires the
    labelling to be injective on reachable states.
    """
    classes = kernel_partition(aut)
    cls_of = {q: k for k, c in enumerate(classes) for q in c}
    base_cls = cls_of[aut.initial]

    seen = {base_cls}
    bfs = [base_cls]
    for c in bfs:
        rep = classes[c][0]
        for d in range(aut.p):
            nxt = cls_of[aut.delta[rep][d]]
            if nxt not in seen:
                seen.add(nxt)
                bfs.append(nxt)

    if order == "bfs":
        perm = bfs
    elif order == "labels":
        reach = aut.reachable()
        labels = [aut.tau[q] for q in reach]
        if len(set(labels)) != len(labels):
            raise InvalidAutomaton("order='labels' needs injective labels on reachable states")
        perm = sorted(bfs, key=lambda c: aut.tau[classes[c][0]])
    else:
        raise ValueError(f"unknown vertex order {order!r}")

    vid = {c: k for k, c in enumerate(perm)}
    gen = tuple(
        tuple(vid[cls_of[aut.delta[classes[c][0]][i]]] for c in perm)
        for i in range(aut.p)
    )
    first = tuple(_first_terms(aut, classes[c][0]) for c in perm)
    members = tuple(tuple(classes[c]) for c in perm)
    return KernelGraph(aut.p, aut.alphabet, gen, first, vid[base_cls], members, aut)


# -- the monoid G(a) -----------------------------------------------------------


@dataclass(frozen=True)
class TransformationMonoid:
    """Self-maps of the vertex set generated by ``t_0..t_{p-1}``.

    ``elements[0]`` is the identity; ``words[k]`` is the length-lex least
    generator word for ``elements[k]`` (composition: first left, then right).
    """

    generators: tuple[tuple[int, ...], ...]
    elements: tuple[tuple[int, ...], ...]
    words: tuple[tuple[int, ...], ...]
    is_group: bool

    @property
    def order(self) -> int:
        return len(self.elements)


def compose(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """First ``f``, then ``g``."""
    return tuple(g[x] for x in f)


def monoid_closure(graph: KernelGraph, bound: int = DEFAULT_MONOID_BOUND) -> TransformationMonoid:
    identity = tuple(graph.vertices)
    elements = [identity]
    words: list[tuple[int, ...]] = [()]
    index = {identity: 0}
    for k, g in enumerate(elements):
        for i, t in enumerate(graph.gen):
            h = compose(g, t)
            if h not in index:
                if len(elements) >= bound:
                    raise SizeLimitExceeded(f"monoid has more than {bound} elements", bound=bound)
                index[h] = len(elements)
                elements.append(h)
                words.append(words[k] + (i,))
    is_group = all(graph.gen_is_bijective(i) for i in range(graph.p))
    return TransformationMonoid(graph.gen, tuple(elements), tuple(words), is_group)


@dataclass(frozen=True)
class GlobalRelations:
    """Per-type global relations; ``witnesses[r]`` is a word ending in ``r``
    acting as the identity on every vertex, or ``None``."""

    witnesses: tuple[tuple[int, ...] | None, ...]

    @property
    def flags(self) -> tuple[bool, ...]:
        return tuple(w is not None for w in self.witnesses)

    @property
    def all_types(self) -> bool:
        return all(self.flags)

    def relations(self, p: int) -> list[AffineCode | None]:
        return [None if w is None else word_to_affine(w, p) for w in self.witnesses]


def has_global_relations_all_types(
    graph: KernelGraph, bound: int = DEFAULT_MONOID_BOUND
) -> GlobalRelations:
    """Search the monoid for a word ``w r`` acting as the identity on ``N(a)``.

    A global relation of type ``r`` is exactly such a word, so this decides
    the property directly from the transformations rather than from the
    bijectivity of the generators.
    """
    identity = tuple(graph.vertices)
    found: list[tuple[int, ...] | None] = [None] * graph.p
    elements = [identity]
    words: list[tuple[int, ...]] = [()]
    seen = {identity}
    for k, g in enumerate(elements):
        for i, t in enumerate(graph.gen):
            h = compose(g, t)
            if h == identity and found[i] is None:
                found[i] = words[k] + (i,)
            if h not in seen:
                if len(elements) >= bound:
                    raise SizeLimitExceeded(f"monoid has more than {bound} elements", bound=bound)
                seen.add(h)
                elements.append(h)
                words.append(words[k] + (i,))
        if all(f is not None for f in found):
            break
    return GlobalRelations(tuple(found))


# -- relation languages --------------------------------------------------------


@dataclass(frozen=True)
class RelationLanguage:
    """Acceptor for ``{w != empty : u^w = u}`` over the digits ``0..p-1``.

    A word ``w`` corresponds to the relation ``(i, j)`` with
    ``X^w = p^i X + j``.
    """

    graph: KernelGraph = field(repr=False)
    start: int

    def accepts(self, word: Sequence[int]) -> bool:
        return len(word) > 0 and self.graph.step(self.start, word) == self.start

    def contains_relation(self, i: int, j: int) -> bool:
        code = AffineCode(i, j, self.graph.p)
        return self.accepts(code.word)


def relation_language(graph: KernelGraph, u: int) -> RelationLanguage:
    return RelationLanguage(graph, u)


def rel_equal(graph: KernelGraph, u: int, v: int) -> tuple[bool, tuple[int, ...] | None]:
    """Decide ``rel(u) == rel(v)``; on failure also return a shortest word in
    the symmetric difference."""
    seen: set = set()
    queue: deque = deque()
    for d in range(graph.p):
        nxt = (graph.gen[d][u], graph.gen[d][v])
        if nxt not in seen:
            seen.add(nxt)
            queue.append((nxt, (d,)))
    while queue:
        (x, y), word = queue.popleft()
        if (x == u) != (y == v):
            return False, word
        for d in range(graph.p):
            nxt = (graph.gen[d][x], graph.gen[d][y])
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + (d,)))
    return True, None


def minimal_relations(graph: KernelGraph, u: int, max_len: int = 64) -> list[tuple[int, ...] | None]:
    """For each type ``r``, the length-lex least word of ``rel(u)`` ending in
    ``r`` with at most ``max_len`` letters (``None`` if there is none)."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    # length-lex least word reaching each vertex from u
    best = {u: ()}
    order = [u]
    for x in order:
        for d in range(graph.p):
            y = graph.gen[d][x]
            if y not in best:
                best[y] = best[x] + (d,)
                order.append(y)
    out: list[tuple[int, ...] | None] = []
    for r in range(graph.p):
        cands = [best[x] for x in order if graph.gen[r][x] == u]
        if not cands:
            out.append(None)
            continue
        w = min(cands, key=lambda c: (len(c), c)) + (r,)
        out.append(w if len(w) <= max_len else None)
    return out
