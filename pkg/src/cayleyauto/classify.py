"""Sequence classes read off ``Gamma(a)`` and their structural certificates.

Homogeneity is decided from its definition for every base: every vertex
reaches every other one and all relation languages agree with the one at
the base vertex.  The structural shortcut (``G(a)`` a group acting simply
transitively) is only compared against it for ``p = 2``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .core import Automaton, prefix_labels, word_to_affine
from .errors import NotAGroup, NotCayley, NotSchreier
from .groups import PermGroup, Permutation, small_generating_set
from .kernel import (
    DEFAULT_MONOID_BOUND,
    KernelGraph,
    distinguishing_index,
    has_global_relations_all_types,
    monoid_closure,
    rel_equal,
)

PREFIX_CAP = 10**6


# -- self-similarity -------------------------------------------------------------


def _similarity(graph: KernelGraph, u: int):
    """Return ``(phi, conflict)``; ``conflict`` is ``(pair, s, known, new)``."""
    phi: dict[int, int] = {}
    inv: dict[int, int] = {}
    start = (graph.base, u)
    seen = {start}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        for s in range(graph.p - 1):
            a, b = graph.first_terms[x][s], graph.first_terms[y][s]
            if phi.get(a, b) != b or inv.get(b, a) != a:
                return None, ((x, y), s + 1, a, b)
            phi[a] = b
            inv[b] = a
        for i in range(graph.p):
            nxt = (graph.gen[i][x], graph.gen[i][y])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return phi, None


def similarity_bijection(graph: KernelGraph, u: int) -> dict[str, str] | None:
    """Letter bijection ``phi`` with ``u_n = phi(a_n)`` for all ``n``, restricted
    to the letters used by ``a``; ``None`` if there is none."""
    phi, _ = _similarity(graph, u)
    if phi is None:
        return None
    return {graph.alphabet[a]: graph.alphabet[b] for a, b in sorted(phi.items())}


# -- derived labelling -----------------------------------------------------------


def derived_labeling(graph: KernelGraph) -> Automaton:
    """``Gamma(a)`` as an automaton started at the base vertex.

    Vertex ``u`` is labelled by the first term of the sequence at
    ``t_1^{-1}(u)``, so that reading the single digit 1 from any vertex gives
    that vertex's first term.
    """
    if not all(graph.gen_is_bijective(i) for i in range(graph.p)):
        raise NotAGroup("G(a) is not a group, so t_1 has no inverse to label by")
    inv1 = [0] * graph.size
    for u, v in enumerate(graph.gen[1]):
        inv1[v] = u
    tau = tuple(graph.first_terms[inv1[u]][0] for u in graph.vertices)
    names = tuple(f"v{u}" for u in graph.vertices)
    delta = tuple(tuple(graph.gen[i][u] for i in range(graph.p)) for u in graph.vertices)
    return Automaton(graph.p, names, graph.alphabet, delta, tau, graph.base)


def _disjoint_union(a: Automaton, b: Automaton) -> Automaton:
    shift = a.size
    states = tuple(f"L.{s}" for s in a.states) + tuple(f"R.{s}" for s in b.states)
    letters = {x: k for k, x in enumerate(a.alphabet)}
    tau = a.tau + tuple(letters[b.alphabet[t]] for t in b.tau)
    delta = a.delta + tuple(tuple(r + shift for r in row) for row in b.delta)
    return Automaton(a.p, states, a.alphabet, delta, tau, a.initial)


@dataclass(frozen=True)
class Reproduction:
    """Outcome of comparing the derived automaton with the source.

    ``witness`` is a smallest-length index where the sequences differ;
    ``prefix_checked`` is the number of initial terms compared directly.
    """

    equal: bool
    witness: int | None
    prefix_checked: int
    prefix_mismatch: int | None = None

    def __bool__(self) -> bool:
        return self.equal


def reproduces(aut: Automaton, graph: KernelGraph, prefix: int | None = None) -> Reproduction:
    """Does the derived automaton of ``graph`` produce the same sequence as ``aut``?

    Decided exactly on the disjoint union of the two automata.  The first
    ``prefix`` terms (default ``min(p^14, 10^6)``) are also compared term by
    term as an independent check.
    """
    derived = derived_labeling(graph)
    if derived.alphabet != aut.alphabet:
        derived = Automaton(derived.p, derived.states, aut.alphabet, derived.delta,
                            tuple(aut.alphabet.index(graph.alphabet[t]) for t in derived.tau),
                            derived.initial)
    union = _disjoint_union(aut, derived)
    n = distinguishing_index(union, aut.initial, aut.size + derived.initial)
    if prefix is None:
        prefix = min(aut.p**14, PREFIX_CAP)
    mismatch = None
    if prefix > 0:
        left = prefix_labels(aut, prefix)
        right = prefix_labels(derived, prefix)
        mismatch = next((k + 1 for k, (x, y) in enumerate(zip(left, right)) if x != y), None)
    return Reproduction(n is None and mismatch is None, n, prefix, mismatch)


# -- classification --------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    r1: bool
    r1_flags: tuple[bool, ...]
    is_group: bool
    is_cayley: bool
    homogeneous: bool
    self_similar: bool
    reproduces: bool
    kernel_size: int
    monoid_order: int
    witnesses: dict = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {
            "r1": self.r1,
            "is_group": self.is_group,
            "is_cayley": self.is_cayley,
            "homogeneous": self.homogeneous,
            "self_similar": self.self_similar,
            "reproduces": self.reproduces,
        }


def _homogeneity(graph: KernelGraph):
    for u in graph.vertices:
        reach = set(graph.reachable_from(u))
        if len(reach) != graph.size:
            missing = min(set(graph.vertices) - reach)
            return False, {"unreachable": [u, missing]}
    for u in graph.vertices:
        same, word = rel_equal(graph, graph.base, u)
        if not same:
            return False, {"vertex": u, "word": "".join(map(str, word)),
                           "relation": list(_pair(word, graph.p))}
    return True, None


def _pair(word, p):
    code = word_to_affine(word, p)
    return code.i, code.j


def classify(graph: KernelGraph, aut: Automaton | None = None,
             bound: int = DEFAULT_MONOID_BOUND, prefix: int | None = None) -> Classification:
    """Decide R1, the group and Cayley properties, homogeneity,
    self-similarity and reproduction for the sequence behind ``graph``.

    ``aut`` defaults to the automaton the graph was built from; it is only
    used for the reproduction check.
    """
    aut = graph.source if aut is None else aut
    witnesses: dict = {}
    monoid = monoid_closure(graph, bound)
    glob = has_global_relations_all_types(graph, bound)
    is_group = monoid.is_group
    is_cayley = is_group and graph.size == monoid.order
    if glob.all_types:
        witnesses["global_relations"] = [
            {"type": r, "word": "".join(map(str, w)), "relation": list(_pair(w, graph.p))}
            for r, w in enumerate(glob.witnesses)
        ]
    else:
        witnesses["missing_relation_types"] = [r for r, f in enumerate(glob.flags) if not f]
    if not is_group:
        witnesses["not_bijective"] = [i for i in range(graph.p) if not graph.gen_is_bijective(i)]

    homogeneous, hw = _homogeneity(graph)
    if hw:
        witnesses["homogeneity"] = hw

    self_similar = True
    for u in graph.vertices:
        phi, conflict = _similarity(graph, u)
        if phi is None:
            self_similar = False
            (x, y), s, a, b = conflict
            witnesses["similarity"] = {
                "vertex": u, "pair": [x, y], "digit": s,
                "letters": [graph.alphabet[a], graph.alphabet[b]],
            }
            break

    repro = False
    if is_group:
        rep = reproduces(aut, graph, prefix)
        repro = rep.equal
        if not repro:
            witnesses["reproduction"] = {"index": rep.witness, "prefix_mismatch": rep.prefix_mismatch}
    else:
        witnesses["reproduction"] = {"reason": "G(a) is not a group"}

    if graph.p == 2 and homogeneous != (is_group and is_cayley):
        raise AssertionError("definitional and structural homogeneity disagree")

    if self_similar and is_cayley:
        cs = coset_structure(graph)
        if cs is not None:
            witnesses["stabilizer_generators"] = [str(g) for g in cs.generators]

    return Classification(glob.all_types, glob.flags, is_group, is_cayley, homogeneous,
                          self_similar, repro, graph.size, monoid.order, witnesses)


# -- condition (dagger) and the subgroup H ---------------------------------------


def digit_permutations(aut: Automaton) -> list[Permutation]:
    """The digit maps of ``aut`` as permutations of its states."""
    perms = []
    for i in range(aut.p):
        image = [aut.delta[q][i] for q in range(aut.size)]
        if len(set(image)) != aut.size:
            raise NotSchreier(f"digit {i} does not act as a permutation of the states", digit=i)
        perms.append(Permutation(image))
    return perms


def _schreier_group(aut: Automaton, group: PermGroup | None) -> PermGroup:
    perms = digit_permutations(aut)
    if group is None:
        group = PermGroup(perms)
    elif len(group.gens) != aut.p or group.degree != aut.size or list(group.gens) != perms:
        raise NotSchreier("the automaton is not the Schreier graph of the given generators")
    if not group.is_transitive:
        raise NotSchreier("the action on the states is not transitive")
    return group


def dagger_check(aut: Automaton, group: PermGroup | None = None) -> bool:
    """The minimality condition: any ``h`` with ``tau(q0^{hg}) = tau(q0^g)`` for
    all ``g`` must fix ``q0``."""
    group = _schreier_group(aut, group)
    q0 = aut.initial
    for h in group.elements:
        if h(q0) == q0:
            continue
        if all(aut.tau[(h * g)(q0)] == aut.tau[g(q0)] for g in group.elements):
            return False
    return True


@dataclass(frozen=True)
class InvarianceSubgroup:
    elements: tuple[Permutation, ...]
    generators: tuple[Permutation, ...]
    is_normal: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def trivial(self) -> bool:
        return len(self.elements) == 1


def cayley_labels(aut: Automaton, group: PermGroup | None = None) -> tuple[PermGroup, list[int]]:
    """Identify the states of a Cayley automaton with group elements via
    ``g -> q0^g`` and return the labels indexed like ``group.elements``."""
    group = _schreier_group(aut, group)
    points = [g(aut.initial) for g in group.elements]
    if len(set(points)) != aut.size or group.order != aut.size:
        raise NotCayley("the states cannot be identified with the group elements")
    return group, [aut.tau[q] for q in points]


def invariance_subgroup(group: PermGroup, tau: Sequence) -> InvarianceSubgroup:
    """``H = {h : tau(hg) = tau(g) for all g}`` for a labelling of the group
    elements (``tau[k]`` labels ``group.elements[k]``)."""
    if len(tau) != group.order:
        raise NotCayley("labels must be given for every group element")
    idx = group.index
    H = [h for h in group.elements
         if all(tau[idx[h * g]] == tau[k] for k, g in enumerate(group.elements))]
    gens = small_generating_set(group, H)
    return InvarianceSubgroup(tuple(H), tuple(gens), group.is_normal(H))


# -- cosets ----------------------------------------------------------------------


@dataclass(frozen=True)
class CosetStructure:
    """``K`` is the stabilizer of the base letter under the induced left
    action of ``G(a)`` on letters; ``letter_bijection`` maps each left coset
    (by the index of its first element) to its letter."""

    group: PermGroup = field(repr=False)
    K: tuple[Permutation, ...]
    generators: tuple[Permutation, ...]
    core_trivial: bool
    base_letter: str
    action: dict[int, dict[str, str]] = field(repr=False)
    letter_bijection: dict[int, str] | None = None

    @property
    def index(self) -> int:
        return self.group.order // len(self.K)


def monoid_group(graph: KernelGraph) -> PermGroup:
    """``G(a)`` as a permutation group on the vertices."""
    if not all(graph.gen_is_bijective(i) for i in range(graph.p)):
        raise NotAGroup("G(a) is not a group")
    return PermGroup([Permutation(g) for g in graph.gen])


def coset_structure(graph: KernelGraph) -> CosetStructure | None:
    """Recover ``K`` with ``Delta = G/K`` from a self-similar Cayley graph.

    Returns ``None`` when some vertex is not similar to the base or when
    ``G(a)`` does not act simply transitively.
    """
    if not all(graph.gen_is_bijective(i) for i in range(graph.p)):
        return None
    G = monoid_group(graph)
    if G.order != graph.size:
        return None
    base_letter = derived_labeling(graph).label(graph.base)
    action: dict[int, dict[str, str]] = {}
    for k, h in enumerate(G.elements):
        phi = similarity_bijection(graph, h(graph.base))
        if phi is None:
            return None
        action[k] = phi
    K = tuple(h for k, h in enumerate(G.elements) if action[k].get(base_letter) == base_letter)
    core = G.core(K)
    cosets = G.left_cosets(K)
    letters = {c[0]: action[c[0]][base_letter] for c in cosets}
    bijection = letters if len(set(letters.values())) == len(letters) else None
    return CosetStructure(G, K, tuple(small_generating_set(G, K)), len(core) == 1,
                          base_letter, action, bijection)


def isomorphic_via_base_point(aut: Automaton, graph: KernelGraph) -> bool:
    """Is ``graph`` (with its derived labels) the Cayley automaton ``aut``?

    The map is state ``q0^g`` to vertex ``base^g``, i.e. state to kernel
    class; it must be a bijection, and labels must agree with the derived
    labelling.
    """
    cls = graph.class_of
    if len(cls) != aut.size or len(set(cls.values())) != aut.size:
        return False
    if any(cls[aut.delta[q][i]] != graph.gen[i][cls[q]]
           for q in range(aut.size) for i in range(aut.p)):
        return False
    derived = derived_labeling(graph)
    return all(aut.label(q) == derived.label(cls[q]) for q in range(aut.size))
