"""Nondeterministic finite automata without epsilon transitions.

Symbols are single characters from ``[a-z0-9]`` and an alphabet is the sorted
string of its distinct glyphs, so a symbol's id is its index in that string and
comparing words as Python strings is the same as comparing them symbol id by
symbol id. Words are plain ``str`` values.

Every ``Nfa`` is immutable. All operations are module-level functions that
return new automata.
"""

from __future__ import annotations

import array
import string
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable

from sepreg import kernels
from sepreg.errors import NO_DEADLINE, CapExceeded, SepregError

GLYPHS = frozenset(string.ascii_lowercase + string.digits)


def make_alphabet(glyphs: Iterable[str]) -> str:
    """Canonical alphabet string: sorted, deduplicated, validated glyphs."""
    out = set()
    for g in glyphs:
        if g not in GLYPHS:
            raise SepregError(f"invalid symbol {g!r}: symbols are [a-z0-9]")
        out.add(g)
    return "".join(sorted(out))


def merge_alphabets(*alphabets: str) -> str:
    return make_alphabet("".join(alphabets))


def bits(mask: int):
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Nfa:
    state_count: int
    alphabet: str
    transitions: frozenset
    initial: frozenset
    accepting: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n = self.state_count
        if n < 1:
            raise SepregError("an automaton needs at least one state")
        if not self.initial:
            raise SepregError("an automaton needs at least one initial state")
        if make_alphabet(self.alphabet) != self.alphabet:
            raise SepregError(f"alphabet {self.alphabet!r} is not in canonical form")
        for s in self.initial | self.accepting:
            if not 0 <= s < n:
                raise SepregError(f"state {s} out of range for {n} states")
        for p, a, q in self.transitions:
            if not (0 <= p < n and 0 <= q < n):
                raise SepregError(f"transition {(p, a, q)} out of range for {n} states")
            if a not in self.alphabet:
                raise SepregError(f"transition label {a!r} not in alphabet {self.alphabet!r}")

    @cached_property
    def delta(self) -> dict:
        """``(state, glyph) -> tuple of successor states`` (sorted)."""
        table: dict = {}
        for p, a, q in self.transitions:
            table.setdefault((p, a), []).append(q)
        return {k: tuple(sorted(v)) for k, v in table.items()}

    @cached_property
    def out_edges(self) -> tuple:
        """Per state, the sorted tuple of ``(glyph, successor)`` pairs."""
        edges = [[] for _ in range(self.state_count)]
        for p, a, q in self.transitions:
            edges[p].append((a, q))
        return tuple(tuple(sorted(e)) for e in edges)

    @cached_property
    def in_edges(self) -> tuple:
        edges = [[] for _ in range(self.state_count)]
        for p, a, q in self.transitions:
            edges[q].append((a, p))
        return tuple(tuple(sorted(e)) for e in edges)

    @cached_property
    def _csr_cache(self) -> dict:
        return {}

    def csr(self, alphabet: str | None = None):
        """Edge arrays ``(offsets, syms, dsts)`` for the kernels.

        Symbol ids index into ``alphabet``, which must contain this automaton's
        own alphabet; it defaults to the latter.
        """
        alphabet = self.alphabet if alphabet is None else alphabet
        hit = self._csr_cache.get(alphabet)
        if hit is None:
            ids = {g: i for i, g in enumerate(alphabet)}
            offsets = array.array("i", [0])
            syms = array.array("i")
            dsts = array.array("i")
            for edges in self.out_edges:
                for a, q in edges:
                    syms.append(ids[a])
                    dsts.append(q)
                offsets.append(len(syms))
            hit = self._csr_cache[alphabet] = (offsets, syms, dsts)
        return hit

    @property
    def size(self) -> int:
        return self.state_count + len(self.transitions)

    def __repr__(self):
        return (
            f"Nfa(states={self.state_count}, alphabet={self.alphabet!r}, "
            f"transitions={len(self.transitions)}, initial={sorted(self.initial)}, "
            f"accepting={sorted(self.accepting)})"
        )


def empty_nfa(alphabet: str = "") -> Nfa:
    return Nfa(1, alphabet, (), {0}, ())


def word_nfa(word: str, alphabet: str | None = None) -> Nfa:
    """Automaton accepting exactly ``word``."""
    alphabet = make_alphabet(word) if alphabet is None else merge_alphabets(alphabet, word)
    trans = [(i, a, i + 1) for i, a in enumerate(word)]
    return Nfa(len(word) + 1, alphabet, trans, {0}, {len(word)})


def words_nfa(words: Iterable[str], alphabet: str | None = None) -> Nfa:
    """Trie automaton accepting exactly the given finite set of words."""
    words = sorted(set(words))
    glyphs = "".join(words) + (alphabet or "")
    trie = {"": 0}
    trans = []
    accepting = set()
    for w in words:
        for i, a in enumerate(w):
            prefix = w[: i + 1]
            if prefix not in trie:
                trie[prefix] = len(trie)
                trans.append((trie[w[:i]], a, trie[prefix]))
        accepting.add(trie[w])
    return Nfa(len(trie), make_alphabet(glyphs), trans, {0}, accepting)


def union(a: Nfa, b: Nfa) -> Nfa:
    """Disjoint union; the result has the initial states of both operands."""
    k = a.state_count
    trans = set(a.transitions) | {(p + k, x, q + k) for p, x, q in b.transitions}
    return Nfa(
        k + b.state_count,
        merge_alphabets(a.alphabet, b.alphabet),
        trans,
        set(a.initial) | {s + k for s in b.initial},
        set(a.accepting) | {s + k for s in b.accepting},
    )


def with_alphabet(a: Nfa, alphabet: str) -> Nfa:
    """Same automaton over the enlarged alphabet ``alphabet`` ∪ ``a.alphabet``."""
    alphabet = merge_alphabets(alphabet, a.alphabet)
    if alphabet == a.alphabet:
        return a
    return Nfa(a.state_count, alphabet, a.transitions, a.initial, a.accepting)


def step(a: Nfa, states: Iterable[int], glyph: str) -> frozenset:
    delta = a.delta
    return frozenset(q for p in states for q in delta.get((p, glyph), ()))


def member(a: Nfa, w: str) -> bool:
    """Whether ``a`` has an accepting run on ``w`` (subset simulation)."""
    current = a.initial
    for ch in w:
        current = step(a, current, ch)
        if not current:
            return False
    return not current.isdisjoint(a.accepting)


def reachable_states(a: Nfa, start: Iterable[int] | None = None) -> frozenset:
    start = a.initial if start is None else start
    seen = set(start)
    stack = list(seen)
    out = a.out_edges
    while stack:
        p = stack.pop()
        for _, q in out[p]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return frozenset(seen)


def coreachable_states(a: Nfa) -> frozenset:
    """States from which some accepting state is reachable."""
    seen = set(a.accepting)
    stack = list(seen)
    inc = a.in_edges
    while stack:
        q = stack.pop()
        for _, p in inc[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return frozenset(seen)


def intersect(a: Nfa, b: Nfa) -> Nfa:
    """Product automaton over the reachable state pairs."""
    alphabet = merge_alphabets(a.alphabet, b.alphabet)
    start = sorted(product(a.initial, b.initial))
    index = {pair: i for i, pair in enumerate(start)}
    queue = deque(start)
    trans = []
    da, db = a.delta, b.delta
    while queue:
        pair = queue.popleft()
        p, q = pair
        src = index[pair]
        for g in alphabet:
            for p2 in da.get((p, g), ()):
                for q2 in db.get((q, g), ()):
                    nxt = (p2, q2)
                    if nxt not in index:
                        index[nxt] = len(index)
                        queue.append(nxt)
                    trans.append((src, g, index[nxt]))
    accepting = {i for (p, q), i in index.items() if p in a.accepting and q in b.accepting}
    return Nfa(len(index), alphabet, trans, range(len(start)), accepting)


def reverse(a: Nfa) -> Nfa:
    """Automaton for the reversed language (initial and accepting swapped)."""
    trans = {(q, x, p) for p, x, q in a.transitions}
    if not a.accepting:
        return Nfa(a.state_count, a.alphabet, trans, {0}, ())
    return Nfa(a.state_count, a.alphabet, trans, a.accepting, a.initial)


def prefixes(a: Nfa) -> Nfa:
    """Prefix language: every co-reachable state becomes accepting."""
    return Nfa(a.state_count, a.alphabet, a.transitions, a.initial, coreachable_states(a))


def suffixes(a: Nfa) -> Nfa:
    """Suffix language: every reachable state becomes initial."""
    return Nfa(a.state_count, a.alphabet, a.transitions, reachable_states(a), a.accepting)


def _check_ambient(a: Nfa, ambient: str) -> str:
    ambient = make_alphabet(ambient)
    if not set(a.alphabet) <= set(ambient):
        raise SepregError(f"ambient alphabet {ambient!r} does not contain {a.alphabet!r}")
    return ambient


def upward_subseq_closure(a: Nfa, ambient: str) -> Nfa:
    """Closure under supersequences: self-loops on every ambient symbol everywhere."""
    ambient = _check_ambient(a, ambient)
    loops = {(p, g, p) for p in range(a.state_count) for g in ambient}
    return Nfa(a.state_count, ambient, a.transitions | loops, a.initial, a.accepting)


def upward_suffix_closure(a: Nfa, ambient: str) -> Nfa:
    """``Σ* · L(a)``: self-loops on every ambient symbol at the initial states."""
    ambient = _check_ambient(a, ambient)
    loops = {(p, g, p) for p in a.initial for g in ambient}
    return Nfa(a.state_count, ambient, a.transitions | loops, a.initial, a.accepting)


def restrict(a: Nfa, allowed: Iterable[str]) -> Nfa:
    """Drop every transition whose label is not in ``allowed``."""
    allowed = set(allowed)
    trans = {t for t in a.transitions if t[1] in allowed}
    return Nfa(a.state_count, a.alphabet, trans, a.initial, a.accepting)


def is_empty(a: Nfa) -> bool:
    return reachable_states(a).isdisjoint(a.accepting)


def trim(a: Nfa) -> Nfa:
    """Keep only states that are both reachable and co-reachable.

    States are renumbered in increasing order of their old index. An automaton
    with an empty language trims to the one-state empty automaton.
    """
    useful = sorted(reachable_states(a) & coreachable_states(a))
    if not useful:
        return empty_nfa(a.alphabet)
    index = {s: i for i, s in enumerate(useful)}
    trans = {(index[p], x, index[q]) for p, x, q in a.transitions if p in index and q in index}
    return Nfa(
        len(useful),
        a.alphabet,
        trans,
        {index[s] for s in a.initial if s in index},
        {index[s] for s in a.accepting if s in index},
    )


def is_infinite(a: Nfa) -> bool:
    """Whether the trimmed automaton has a cycle."""
    t = trim(a)
    if not t.accepting:
        return False
    offsets, syms, dsts = t.csr()
    _, comp_alpha = kernels.scc(t.state_count, offsets, syms, dsts, (1 << len(t.alphabet)) - 1)
    return any(comp_alpha)


def _distance_to_accept(a: Nfa) -> list:
    inf = float("inf")
    dist = [inf] * a.state_count
    queue = deque()
    for s in a.accepting:
        dist[s] = 0
        queue.append(s)
    inc = a.in_edges
    while queue:
        q = queue.popleft()
        for _, p in inc[q]:
            if dist[p] == inf:
                dist[p] = dist[q] + 1
                queue.append(p)
    return dist


def shortest_word(a: Nfa) -> str | None:
    """Shortest accepted word, least in symbol order among those; None if empty."""
    dist = _distance_to_accept(a)
    current = set(a.initial)
    best = min((dist[s] for s in current), default=float("inf"))
    if best == float("inf"):
        return None
    current = {s for s in current if dist[s] == best}
    word = []
    for d in range(best, 0, -1):
        for g in a.alphabet:
            nxt = {q for q in step(a, current, g) if dist[q] == d - 1}
            if nxt:
                word.append(g)
                current = nxt
                break
    return "".join(word)


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components of an automaton's transition graph.

    ``order`` lists component ids topologically: every transition leads from a
    component to itself or to one later in ``order``.
    """

    component_of: tuple
    component_alphabet: tuple
    order: tuple

    def component(self, state: int) -> int:
        return self.component_of[state]

    def alphabet_of_state(self, state: int) -> frozenset:
        return self.component_alphabet[self.component_of[state]]

    def members(self, comp: int) -> frozenset:
        return frozenset(s for s, c in enumerate(self.component_of) if c == comp)


def sccs(a: Nfa) -> SccDecomposition:
    offsets, syms, dsts = a.csr()
    comp_of, comp_alpha = kernels.scc(a.state_count, offsets, syms, dsts, (1 << len(a.alphabet)) - 1)
    alph = tuple(frozenset(a.alphabet[i] for i in bits(m)) for m in comp_alpha)
    return SccDecomposition(tuple(comp_of), alph, tuple(reversed(range(len(comp_alpha)))))


def is_deterministic(a: Nfa) -> bool:
    return len(a.initial) == 1 and all(len(v) == 1 for v in a.delta.values())


def is_complete(a: Nfa) -> bool:
    delta = a.delta
    return all((p, g) in delta for p in range(a.state_count) for g in a.alphabet)


def determinize_bounded(a: Nfa, state_cap: int, alphabet: str | None = None, deadline=NO_DEADLINE) -> Nfa:
    """Subset construction producing a complete DFA, or ``CapExceeded``.

    ``alphabet`` optionally enlarges the input alphabet so that the result is
    complete over it. The empty subset, when reachable, is the sink state.
    """
    if state_cap < 1:
        raise ValueError("state_cap must be at least 1")
    alphabet = a.alphabet if alphabet is None else merge_alphabets(alphabet, a.alphabet)
    start = frozenset(a.initial)
    index = {start: 0}
    queue = deque([start])
    trans = []
    while queue:
        deadline.check()
        subset = queue.popleft()
        src = index[subset]
        for g in alphabet:
            nxt = step(a, subset, g)
            if nxt not in index:
                if len(index) >= state_cap:
                    raise CapExceeded("subset construction", state_cap)
                index[nxt] = len(index)
                queue.append(nxt)
            trans.append((src, g, index[nxt]))
    accepting = {i for s, i in index.items() if not s.isdisjoint(a.accepting)}
    return Nfa(len(index), alphabet, trans, {0}, accepting)


def complement_dfa(dfa: Nfa) -> Nfa:
    """Complement of a complete deterministic automaton (accepting set flipped)."""
    if not (is_deterministic(dfa) and is_complete(dfa)):
        raise SepregError("complement_dfa needs a complete deterministic automaton")
    rest = set(range(dfa.state_count)) - dfa.accepting
    return Nfa(dfa.state_count, dfa.alphabet, dfa.transitions, dfa.initial, rest)


def enumerate_words(a: Nfa, max_len: int, deadline=NO_DEADLINE) -> list:
    """All accepted words of length <= ``max_len`` in length-then-symbol order."""
    dist = _distance_to_accept(a)
    found = []
    stack = [("", frozenset(a.initial))]
    while stack:
        deadline.check()
        word, states = stack.pop()
        if not states.isdisjoint(a.accepting):
            found.append(word)
        room = max_len - len(word)
        if room <= 0:
            continue
        for g in a.alphabet:
            nxt = step(a, states, g)
            if nxt and min(dist[q] for q in nxt) <= room - 1:
                stack.append((word + g, nxt))
    found.sort(key=lambda w: (len(w), w))
    return found


def accepts_all(a: Nfa, alphabet: str, state_cap: int) -> bool:
    """Whether ``L(a)`` is all of ``alphabet``*; uses bounded determinization."""
    dfa = determinize_bounded(a, state_cap, alphabet)
    return is_empty(complement_dfa(dfa))


def included(a: Nfa, b: Nfa, state_cap: int) -> bool:
    """``L(a) ⊆ L(b)``, by determinizing ``b`` (bounded) and testing emptiness."""
    alphabet = merge_alphabets(a.alphabet, b.alphabet)
    comp = complement_dfa(determinize_bounded(b, state_cap, alphabet))
    return is_empty(intersect(a, comp))
