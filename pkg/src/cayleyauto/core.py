"""Automata, base-p numeration and the affine word calculus.

Sequences produced by an automaton are indexed from 1.  The digits of ``n``
are read least significant first, starting from the initial state, and the
label of the state reached is the term ``a_n``.  Asking for index 0 is an
error everywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import BadIndex, CodeError, InvalidAutomaton, ParseError


def _check_base(p: int) -> None:
    if not isinstance(p, int) or p < 2:
        raise InvalidAutomaton(f"base must be an integer >= 2, got {p!r}")


def digits_lsb(n: int, p: int) -> list[int]:
    """Base-``p`` digits of ``n``, least significant first."""
    _check_base(p)
    if n < 1:
        raise BadIndex(f"sequences start at index 1, got {n}")
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def numeration_stats(n: int, p: int) -> tuple[int, list[int]]:
    """Return ``(length, counts)`` where ``counts[i]`` is the number of digits
    equal to ``i`` in the base-``p`` expansion of ``n``."""
    digits = digits_lsb(n, p)
    counts = [0] * p
    for d in digits:
        counts[d] += 1
    return len(digits), counts


@dataclass(frozen=True)
class Automaton:
    """A complete deterministic p-automaton with labelled states.

    States and letters are referred to by position; ``states`` and
    ``alphabet`` hold their names in declaration order.  ``delta[q][i]`` is
    the state reached from ``q`` by the digit ``i`` and ``tau[q]`` is the
    position of the label of ``q`` in ``alphabet``.
    """

    p: int
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    tau: tuple[int, ...]
    initial: int = 0

    def __post_init__(self):
        _check_base(self.p)
        n = len(self.states)
        if n == 0:
            raise InvalidAutomaton("an automaton needs at least one state")
        if len(set(self.states)) != n:
            raise InvalidAutomaton("duplicate state names")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InvalidAutomaton("duplicate alphabet symbols")
        if len(self.delta) != n or len(self.tau) != n:
            raise InvalidAutomaton("delta and tau must have one entry per state")
        for q, row in enumerate(self.delta):
            if len(row) != self.p:
                raise InvalidAutomaton(
                    f"state {self.states[q]!r} needs exactly {self.p} transitions"
                )
            if any(not 0 <= r < n for r in row):
                raise InvalidAutomaton(f"transition out of {self.states[q]!r} leaves Q")
        if any(not 0 <= t < len(self.alphabet) for t in self.tau):
            raise InvalidAutomaton("state label outside the alphabet")
        if not 0 <= self.initial < n:
            raise InvalidAutomaton("initial state outside Q")

    @classmethod
    def from_maps(
        cls,
        p: int,
        transitions: Mapping[tuple[str, int], str],
        labels: Mapping[str, str],
        initial: str,
        states: Sequence[str] | None = None,
        alphabet: Sequence[str] | None = None,
    ) -> "Automaton":
        """Build an automaton from name-keyed dictionaries."""
        if states is None:
            states = list(labels)
        if alphabet is None:
            alphabet = list(dict.fromkeys(labels[s] for s in states))
        index = {s: k for k, s in enumerate(states)}
        letter = {a: k for k, a in enumerate(alphabet)}
        try:
            delta = tuple(
                tuple(index[transitions[(s, i)]] for i in range(p)) for s in states
            )
            tau = tuple(letter[labels[s]] for s in states)
            init = index[initial]
        except KeyError as exc:
            raise InvalidAutomaton(f"incomplete automaton data: {exc}") from None
        return cls(p, tuple(states), tuple(alphabet), delta, tau, init)

    @property
    def size(self) -> int:
        return len(self.states)

    def state_index(self, q: int | str) -> int:
        if isinstance(q, str):
            try:
                return self.states.index(q)
            except ValueError:
                raise InvalidAutomaton(f"unknown state {q!r}") from None
        if not 0 <= q < self.size:
            raise InvalidAutomaton(f"state index {q} out of range")
        return q

    def run(self, q: int, digits: Iterable[int]) -> int:
        for d in digits:
            q = self.delta[q][d]
        return q

    def label(self, q: int) -> str:
        return self.alphabet[self.tau[q]]

    def reachable(self, start: int | None = None) -> list[int]:
        """States reachable from ``start`` (default: initial), in BFS order."""
        start = self.initial if start is None else start
        seen = {start}
        order = [start]
        for q in order:
            for r in self.delta[q]:
                if r not in seen:
                    seen.add(r)
                    order.append(r)
        return order

    def sequence(self, count: int, start: int | str | None = None) -> list[str]:
        """The first ``count`` terms produced from ``start``."""
        q = self.initial if start is None else self.state_index(start)
        return [eval_from(self, q, n) for n in range(1, count + 1)]


def eval_from(aut: Automaton, q: int | str, n: int) -> str:
    """Term of index ``n`` of the sequence produced with ``q`` as initial state."""
    q = aut.state_index(q)
    return aut.label(aut.run(q, digits_lsb(n, aut.p)))


def evaluate(aut: Automaton, n: int) -> str:
    return eval_from(aut, aut.initial, n)


def prefix_labels(aut: Automaton, count: int, start: int | str | None = None) -> list[int]:
    """Letter positions of the first ``count`` terms, computed level by level.

    Extending every ``k``-digit string by a leading digit ``d`` gives the
    integers of the next length in increasing order, so no term is
    re-evaluated from scratch.
    """
    q = aut.initial if start is None else aut.state_index(start)
    out: list[int] = []
    level = [q]
    while len(out) < count:
        for d in range(1, aut.p):
            out.extend(aut.tau[aut.delta[r][d]] for r in level)
        level = [aut.delta[r][d] for d in range(aut.p) for r in level]
    return out[:count]


def subsequence_state(aut: Automaton, i: int, j: int) -> int:
    """State producing ``(a_{p^i n + j})_{n >= 1}``.

    The digits of ``j`` are followed from the initial state, padded with
    zeros so that exactly ``i`` moves are made.
    """
    if i < 0 or not 0 <= j < aut.p**i:
        raise CodeError(f"need 0 <= j < p^i, got i={i}, j={j}")
    return aut.run(aut.initial, affine_to_word(i, j, aut.p))


@dataclass(frozen=True)
class AffineCode:
    """The polynomial ``p^i X + j`` together with its digit code."""

    i: int
    j: int
    p: int

    def __post_init__(self):
        if self.i < 0 or not 0 <= self.j < self.p**self.i:
            raise CodeError(f"invalid affine code ({self.i}, {self.j}) for p={self.p}")

    @property
    def word(self) -> tuple[int, ...]:
        """Digits in the order they are applied (``t_{w0}`` first)."""
        return affine_to_word(self.i, self.j, self.p)

    @property
    def code(self) -> str:
        """The word ``[p^i X + j]``: ``j`` in base ``p`` padded to ``i`` digits."""
        return "".join(_digit_char(d) for d in reversed(self.word))

    def __str__(self):
        if self.i == 0:
            return "X"
        lead = f"{self.p ** self.i}X"
        return lead if self.j == 0 else f"{lead}+{self.j}"


def _digit_char(d: int) -> str:
    return str(d) if d < 10 else f"<{d}>"


def affine_to_word(i: int, j: int, p: int) -> tuple[int, ...]:
    """Word ``w`` (applied left to right) with ``X^w = p^i X + j``."""
    if i < 0 or not 0 <= j < p**i:
        raise CodeError(f"need 0 <= j < p^i, got i={i}, j={j}")
    out = []
    for _ in range(i):
        j, d = divmod(j, p)
        out.append(d)
    return tuple(out)


def word_to_affine(word: Iterable[int], p: int) -> AffineCode:
    # (p^i X + j)^{t_s} = p^{i+1} X + s p^i + j
    i, j = 0, 0
    for s in word:
        if not 0 <= s < p:
            raise CodeError(f"digit {s} outside 0..{p - 1}")
        j += s * p**i
        i += 1
    return AffineCode(i, j, p)


def relation_type(i: int, j: int, p: int) -> int:
    """Leftmost digit of ``[p^i X + j]``."""
    if (i, j) == (0, 0):
        raise CodeError("(0, 0) is not a relation")
    if not 0 <= j < p**i:
        raise CodeError(f"need 0 <= j < p^i, got i={i}, j={j}")
    return j // p ** (i - 1)


# -- text format -------------------------------------------------------------


def parse_automaton(text: str) -> Automaton:
    """Parse the line-based automaton format.

    ::

        p 2
        alphabet A B
        state a A initial
        state b B
        edge a 0 a
        ...
    """
    p = None
    alphabet: list[str] | None = None
    states: list[str] = []
    labels: dict[str, str] = {}
    initial = None
    edges: dict[tuple[str, int], str] = {}
    edge_lines: list[tuple[int, str, str, str]] = []
    declared: dict[str, int] = {}
    last = 0

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        last = lineno
        head, *rest = line.split()
        if head == "p":
            if p is not None:
                raise ParseError("duplicate 'p' line", lineno)
            if len(rest) != 1:
                raise ParseError("expected 'p <int>'", lineno)
            try:
                p = int(rest[0])
            except ValueError:
                raise ParseError(f"base is not an integer: {rest[0]!r}", lineno) from None
            if p < 2:
                raise ParseError(f"base must be >= 2, got {p}", lineno)
        elif head == "alphabet":
            if alphabet is not None:
                raise ParseError("duplicate 'alphabet' line", lineno)
            if not rest or len(set(rest)) != len(rest):
                raise ParseError("alphabet must list distinct symbols", lineno)
            alphabet = rest
        elif head == "state":
            if alphabet is None:
                raise ParseError("'state' before 'alphabet'", lineno)
            if len(rest) not in (2, 3) or (len(rest) == 3 and rest[2] != "initial"):
                raise ParseError("expected 'state <name> <sym> [initial]'", lineno)
            name, sym = rest[0], rest[1]
            if name in labels:
                raise ParseError(f"duplicate state {name!r}", lineno)
            if sym not in alphabet:
                raise ParseError(f"unknown symbol {sym!r}", lineno)
            states.append(name)
            labels[name] = sym
            declared[name] = lineno
            if len(rest) == 3:
                if initial is not None:
                    raise ParseError("more than one initial state", lineno)
                initial = name
        elif head == "edge":
            if len(rest) != 3:
                raise ParseError("expected 'edge <src> <digit> <dst>'", lineno)
            edge_lines.append((lineno, *rest))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    if p is None:
        raise ParseError("missing 'p' line", last)
    if alphabet is None:
        raise ParseError("missing 'alphabet' line", last)
    if not states:
        raise ParseError("no states declared", last)
    if initial is None:
        raise ParseError("no initial state", last)

    for lineno, src, digit, dst in edge_lines:
        try:
            d = int(digit)
        except ValueError:
            raise ParseError(f"digit is not an integer: {digit!r}", lineno) from None
        if not 0 <= d < p:
            raise ParseError(f"digit {d} outside 0..{p - 1}", lineno)
        for name in (src, dst):
            if name not in labels:
                raise ParseError(f"unknown state {name!r}", lineno)
        if (src, d) in edges:
            raise ParseError(f"duplicate transition {src} --{d}-->", lineno)
        edges[(src, d)] = dst

    for s in states:
        for d in range(p):
            if (s, d) not in edges:
                raise ParseError(f"missing transition {s} --{d}-->", declared[s])

    return Automaton.from_maps(p, edges, labels, initial, states, alphabet)


def serialize_automaton(aut: Automaton) -> str:
    """Canonical text form; ``parse_automaton`` inverts it exactly."""
    lines = [f"p {aut.p}", "alphabet " + " ".join(aut.alphabet)]
    for q, name in enumerate(aut.states):
        tail = " initial" if q == aut.initial else ""
        lines.append(f"state {name} {aut.label(q)}{tail}")
    for q, name in enumerate(aut.states):
        for d, r in enumerate(aut.delta[q]):
            lines.append(f"edge {name} {d} {aut.states[r]}")
    return "\n".join(lines) + "\n"
