"""Shared generators and brute-force oracles for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, product

from hypothesis import strategies as st

from sepreg.nfa import Nfa, words_nfa
from sepreg.regex import Concat, Empty, Epsilon, Star, Symbol, Union


def random_nfa(rng: random.Random, max_states: int = 4, alphabet: str = "ab",
               density: float = 0.35, min_states: int = 1) -> Nfa:
    n = rng.randint(min_states, max_states)
    trans = [(p, g, q) for p in range(n) for g in alphabet for q in range(n) if rng.random() < density]
    initial = {0} if rng.random() < 0.8 else {s for s in range(n) if rng.random() < 0.5} | {0}
    accepting = {s for s in range(n) if rng.random() < 0.4}
    return Nfa(n, alphabet, trans, initial, accepting)


def random_pair(rng: random.Random, max_states: int = 4, alphabet: str = "ab"):
    return random_nfa(rng, max_states, alphabet), random_nfa(rng, max_states, alphabet)


def random_finite_pair(rng: random.Random, max_words: int = 6, max_len: int = 5,
                       alphabet: str = "ab", disjoint: bool = True):
    def words():
        return {"".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))
                for _ in range(rng.randint(0, max_words))}

    ks, ls = words(), words()
    if disjoint:
        ls -= ks
    return sorted(ks), sorted(ls)


def finite_nfa(words, alphabet: str = "ab") -> Nfa:
    return words_nfa(words, alphabet)


@st.composite
def nfas(draw, max_states: int = 4, alphabet: str = "ab"):
    n = draw(st.integers(1, max_states))
    triples = [(p, g, q) for p in range(n) for g in alphabet for q in range(n)]
    trans = draw(st.sets(st.sampled_from(triples), max_size=len(triples)))
    initial = draw(st.sets(st.integers(0, n - 1), min_size=1))
    accepting = draw(st.sets(st.integers(0, n - 1)))
    return Nfa(n, alphabet, trans, initial, accepting)


def words_upto(alphabet: str, n: int):
    for length in range(n + 1):
        for t in product(alphabet, repeat=length):
            yield "".join(t)


def is_subseq(v: str, w: str) -> bool:
    """Subsequence test by exhaustive index choice (independent of the library)."""
    return any("".join(w[i] for i in idx) == v for idx in combinations(range(len(w)), len(v)))


@lru_cache(maxsize=None)
def all_subseqs(w: str) -> frozenset:
    return frozenset("".join(w[i] for i in idx)
                     for r in range(len(w) + 1) for idx in combinations(range(len(w)), r))


# -- regex oracle ----------------------------------------------------------------


def regex_matches(node, w: str) -> bool:
    """Backtracking matcher straight from the regex semantics."""
    return len(w) in _ends(node, w, 0)


def _ends(node, w, i):
    if isinstance(node, Empty):
        return set()
    if isinstance(node, Epsilon):
        return {i}
    if isinstance(node, Symbol):
        return {i + 1} if i < len(w) and w[i] == node.glyph else set()
    if isinstance(node, Union):
        return _ends(node.left, w, i) | _ends(node.right, w, i)
    if isinstance(node, Concat):
        return {k for j in _ends(node.left, w, i) for k in _ends(node.right, w, j)}
    if isinstance(node, Star):
        seen = {i}
        frontier = {i}
        while frontier:
            nxt = {k for j in frontier for k in _ends(node.child, w, j)} - seen
            seen |= nxt
            frontier = nxt
        return seen
    raise TypeError(node)


@st.composite
def regex_asts(draw, alphabet: str = "ab", depth: int = 4):
    if depth == 0 or draw(st.integers(0, 3)) == 0:
        return draw(st.one_of(st.just(Epsilon()), st.sampled_from([Symbol(g) for g in alphabet])))
    kind = draw(st.sampled_from(["union", "concat", "star"]))
    if kind == "star":
        return Star(draw(regex_asts(alphabet, depth - 1)))
    left = draw(regex_asts(alphabet, depth - 1))
    right = draw(regex_asts(alphabet, depth - 1))
    return Union(left, right) if kind == "union" else Concat(left, right)


# -- finite-language combinatorial oracles ----------------------------------------


def brute_subseq_union(ks, ls) -> bool:
    return not any(is_subseq(u, v) for u in ks for v in ls)


def brute_subseq_single(ks, ls, alphabet: str) -> bool:
    if not ks:
        # any word longer than every L-word avoids L when a symbol exists
        return not ls or bool(alphabet)
    shortest = min(ks, key=lambda w: (len(w), w))
    return any(all(is_subseq(w, u) for u in ks) and not any(is_subseq(w, v) for v in ls)
               for w in all_subseqs(shortest))


def common_suffix(ws) -> str:
    ws = list(ws)
    out = ""
    for n in range(1, min(map(len, ws)) + 1):
        tails = {w[-n:] for w in ws}
        if len(tails) != 1:
            break
        out = tails.pop()
    return out


def brute_suffix_single(ks, ls, alphabet: str) -> bool:
    if not ks:
        return not ls or bool(alphabet)
    c = common_suffix(ks)
    return not any(v.endswith(c) for v in ls)


def brute_suffix_union(ks, ls) -> bool:
    return not any(v.endswith(u) for u in ks for v in ls)


def brute_suffix_bc(ks, ls) -> bool:
    return not set(ks) & set(ls)
