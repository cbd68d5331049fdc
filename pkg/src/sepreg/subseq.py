"""Separating K from L by upward subsequence-closed languages.

``subseq-union``: a finite union of ``Σ*a1Σ*...anΣ*`` separates K from L iff no
K-word is a subsequence of an L-word, i.e. iff closure(K) ∩ L = ∅.

``subseq-single``: a single ``closure(w)`` must contain K and avoid L. This is
NP-complete, so the decider is a pruned depth-first search over candidate words.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from sepreg.errors import NO_DEADLINE, CapExceeded, LimitExceeded
from sepreg.nfa import (
    Nfa,
    complement_dfa,
    determinize_bounded,
    enumerate_words,
    intersect,
    is_empty,
    member,
    merge_alphabets,
    reachable_states,
    shortest_word,
    upward_subseq_closure,
)
from sepreg.verdict import Verdict

DEFAULT_MINIMAL_WORD_BOUND = 8
DEFAULT_DET_CAP = 4096


def is_subsequence(v: str, w: str) -> bool:
    it = iter(w)
    return all(c in it for c in v)


def greedy_embedding_dfa(w: str, ambient: str) -> Nfa:
    """Complete DFA for closure(w); state i means ``w[:i]`` has been embedded."""
    ambient = merge_alphabets(ambient, w)
    n = len(w)
    trans = []
    for i in range(n + 1):
        for g in ambient:
            trans.append((i, g, i + 1 if i < n and g == w[i] else i))
    return Nfa(n + 1, ambient, trans, {0}, {n})


def _closure_contains(k: Nfa, w: str, ambient: str) -> bool:
    """K ⊆ closure(w)."""
    return is_empty(intersect(k, complement_dfa(greedy_embedding_dfa(w, ambient))))


def _closure_avoids(l: Nfa, w: str, ambient: str) -> bool:
    """closure(w) ∩ L = ∅."""
    return is_empty(intersect(greedy_embedding_dfa(w, ambient), l))


def minimal_words(words) -> list:
    """The subsequence-minimal elements of a finite word list."""
    out = []
    for w in sorted(set(words), key=lambda x: (len(x), x)):
        if not any(is_subsequence(m, w) for m in out):
            out.append(w)
    return out


@dataclass(frozen=True)
class UnionWitness:
    """Separator closure(K), plus the minimal K-words found by bounded enumeration.

    ``complete`` says whether the union of closures of ``minimal_words`` was
    verified to contain K (None when the check hit its cap).
    """

    closure: Nfa
    minimal_words: tuple
    bound: int
    complete: bool | None

    def to_json(self):
        return {
            "kind": "subsequence-union",
            "minimal_words": list(self.minimal_words),
            "enumeration_bound": self.bound,
            "complete": self.complete,
            "closure_states": self.closure.state_count,
        }


def closure_union_dfa(words, ambient: str, state_cap: int = DEFAULT_DET_CAP * 4) -> Nfa:
    """Complete DFA for the union of closure(w) over ``words``.

    States are tuples of greedy-embedding positions, one per word. An empty
    word list gives the empty language.
    """
    words = list(words)
    ambient = merge_alphabets(ambient, *words)
    start = tuple(0 for _ in words)
    index = {start: 0}
    order = [start]
    trans = []
    i = 0
    while i < len(order):
        state = order[i]
        for g in ambient:
            nxt = tuple(
                p + 1 if p < len(w) and w[p] == g else p for p, w in zip(state, words)
            )
            if nxt not in index:
                if len(order) >= state_cap:
                    raise CapExceeded("closure union", state_cap)
                index[nxt] = len(order)
                order.append(nxt)
            trans.append((i, g, index[nxt]))
        i += 1
    accepting = {j for s, j in index.items() if any(p == len(w) for p, w in zip(s, words))}
    return Nfa(len(order), ambient, trans, {0}, accepting)


def decide_subseq_union(k: Nfa, l: Nfa, alphabet: str | None = None,
                        minimal_word_bound: int = DEFAULT_MINIMAL_WORD_BOUND,
                        deadline=NO_DEADLINE) -> Verdict:
    """Whether K is separable from L by a finite union of subsequence languages."""
    t0 = time.perf_counter()
    ambient = merge_alphabets(k.alphabet, l.alphabet, alphabet or "")
    closure = upward_subseq_closure(k, ambient)
    product_ = intersect(closure, l)
    stats = {"vertices": product_.state_count}
    if not is_empty(product_):
        stats["elapsed_ms"] = (time.perf_counter() - t0) * 1000.0
        return Verdict("subseq-union", False, stats=stats)
    mins = minimal_words(enumerate_words(k, minimal_word_bound, deadline))
    complete = None
    if not mins:
        complete = is_empty(k)
    else:
        try:
            complete = is_empty(intersect(k, complement_dfa(closure_union_dfa(mins, ambient))))
        except CapExceeded:
            pass
    witness = UnionWitness(closure, tuple(mins), minimal_word_bound, complete)
    stats["elapsed_ms"] = (time.perf_counter() - t0) * 1000.0
    return Verdict("subseq-union", True, witness=witness, stats=stats)


def _downward_closure(l: Nfa) -> Nfa:
    """Automaton for the set of subsequences of L-words: any transition may be skipped.

    Skipping is an epsilon move, eliminated here by taking, for each state, the
    set of states reachable from it (all of which may be skipped to).
    """
    trans = set()
    accepting = set()
    for p in range(l.state_count):
        for r in reachable_states(l, {p}):
            if r in l.accepting:
                accepting.add(p)
            for g, q in l.out_edges[r]:
                trans.add((p, g, q))
    return Nfa(l.state_count, l.alphabet, trans, l.initial, accepting)


def _shortest_rejected(a: Nfa, ambient: str, cap: int, deadline):
    """Shortest word over ``ambient`` not in L(a), or None when a accepts everything."""
    dfa = determinize_bounded(a, cap, ambient, deadline)
    return shortest_word(complement_dfa(dfa))


def _saturate(k: Nfa, w: str, candidates: str, ambient: str, depth: int) -> str:
    """Append the first symbol keeping K ⊆ closure(w), while one exists.

    Every extension still avoids L, so the result is a tighter witness.
    """
    while len(w) < depth:
        for g in candidates:
            if _closure_contains(k, w + g, ambient):
                w += g
                break
        else:
            break
    return w


def decide_subseq_single(k: Nfa, l: Nfa, depth_cap: int | None = None, alphabet: str | None = None,
                         det_cap: int = DEFAULT_DET_CAP, deadline=NO_DEADLINE) -> Verdict:
    """Search for w with K ⊆ closure(w) and closure(w) ∩ L = ∅.

    Any such w is a subsequence of the shortest K-word, so the search depth is
    ``|shortest_word(K)|``. Extending w only shrinks closure(w), so a node is
    pruned as soon as K ⊄ closure(w). Symbols are tried in alphabet order; the
    first witness found is extended greedily and returned. When ``depth_cap`` cuts the search short
    without a witness the verdict is inconclusive.
    """
    t0 = time.perf_counter()
    ambient = merge_alphabets(k.alphabet, l.alphabet, alphabet or "")
    stats = {"nodes": 0}

    def done(separable, witness=None, note=None):
        stats["elapsed_ms"] = (time.perf_counter() - t0) * 1000.0
        return Verdict("subseq-single", separable, witness=witness, stats=stats, note=note)

    shortest = shortest_word(k)
    if shortest is None:
        # K = ∅: need some w that is not a subsequence of any L-word
        try:
            w = _shortest_rejected(_downward_closure(l), ambient, det_cap, deadline)
        except LimitExceeded:
            stats["caps_hit"] = ["determinization"]
            return done(None, note="empty K: determinization cap exceeded")
        if w is None:
            return done(False)
        return done(True, witness=w)

    depth = len(shortest) if depth_cap is None else min(depth_cap, len(shortest))
    truncated = depth < len(shortest)
    candidates = "".join(g for g in ambient if g in k.alphabet)
    stack = [""]
    while stack:
        deadline.check()
        w = stack.pop()
        stats["nodes"] += 1
        if not _closure_contains(k, w, ambient):
            continue
        if _closure_avoids(l, w, ambient):
            return done(True, witness=_saturate(k, w, candidates, ambient, depth))
        if len(w) < depth:
            stack.extend(w + g for g in reversed(candidates))
    if truncated:
        stats["caps_hit"] = ["depth"]
        return done(None, note=f"search depth capped at {depth} < {len(shortest)}")
    return done(False)


def check_single_witness(k: Nfa, l: Nfa, w: str, alphabet: str | None = None) -> bool:
    ambient = merge_alphabets(k.alphabet, l.alphabet, w, alphabet or "")
    return _closure_contains(k, w, ambient) and _closure_avoids(l, w, ambient)


def check_union_witness(k: Nfa, l: Nfa, witness: UnionWitness) -> bool:
    """Separator contains K, misses L, and the minimal words really are in K."""

    if not is_empty(intersect(witness.closure, l)):
        return False
    if not is_empty(intersect(k, complement_dfa(determinize_bounded(witness.closure, DEFAULT_DET_CAP * 4)))):
        return False
    return all(member(k, w) for w in witness.minimal_words)
