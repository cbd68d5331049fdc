"""Brute-force oracles for cross-checking the deciders.

* Simon-level tests: K and L are separable by a piecewise testable language
  of level n iff no K-word and L-word share the same set of subsequences of
  length at most n.
* Bounded zigzag search over explicitly enumerated words.
* Layer separations of finite languages, and an automata-based verifier.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from sepreg import kernels
from sepreg.errors import NO_DEADLINE, CapExceeded, LimitExceeded, OverlappingInputs
from sepreg.nfa import (
    Nfa,
    complement_dfa,
    enumerate_words,
    intersect,
    is_empty,
    member,
    merge_alphabets,
    trim,
)
from sepreg.subseq import closure_union_dfa, is_subsequence

DEFAULT_PROFILE_CAP = 200_000
DEFAULT_WORD_CAP = 4000


# -- subsequence profiles ----------------------------------------------------


@dataclass(frozen=True)
class SubseqProfile:
    """The subsequences of length at most ``n`` of some word."""

    n: int
    subseqs: frozenset

    def to_json(self):
        return {"n": self.n, "subseqs": sorted(self.subseqs, key=lambda w: (len(w), w))}


def subseq_profile(w: str, n: int) -> SubseqProfile:
    if n < 0:
        raise ValueError("n must be non-negative")
    found = {""}
    for c in w:
        found |= {v + c for v in found if len(v) < n}
    return SubseqProfile(n, frozenset(found))


class _ProfileSpace:
    """Index of Σ^{≤n} in length-lex order, with the one-symbol extension table."""

    def __init__(self, alphabet: str, n: int):
        self.alphabet = alphabet
        self.n = n
        self.words = [""]
        for length in range(1, n + 1):
            self.words += ["".join(t) for t in product(alphabet, repeat=length)]
        index = {w: i for i, w in enumerate(self.words)}
        self.stride = max(1, len(alphabet))
        ext = [-1] * (len(self.words) * self.stride)
        for i, w in enumerate(self.words):
            if len(w) < n:
                for a, g in enumerate(alphabet):
                    ext[i * self.stride + a] = index[w + g]
        self.ext = array("i", ext)
        self.nbytes = (len(self.words) + 7) // 8
        self.empty_profile = (1).to_bytes(self.nbytes, "little")
        self._memo = {}

    def extend(self, prof: bytes, a: int) -> bytes:
        key = (prof, a)
        out = self._memo.get(key)
        if out is None:
            out = kernels.profile_extend(prof, a, self.ext, self.stride)
            self._memo[key] = out
        return out

    def decode(self, prof: bytes) -> frozenset:
        bits = int.from_bytes(prof, "little")
        return frozenset(w for i, w in enumerate(self.words) if bits >> i & 1)


def _accepted_profiles(a: Nfa, space: _ProfileSpace, cap: int, budget: list, deadline):
    """Profiles realized by accepted words, plus a function recovering a
    shortest word for any of them."""
    glyph_id = {g: i for i, g in enumerate(space.alphabet)}
    start = [(s, space.empty_profile) for s in sorted(a.initial)]
    parent = {node: None for node in start}
    queue = deque(start)
    found = {}
    budget[0] += len(start)
    while queue:
        deadline.check()
        node = queue.popleft()
        state, prof = node
        if state in a.accepting and prof not in found:
            found[prof] = node
        for g, q in a.out_edges[state]:
            nxt = (q, space.extend(prof, glyph_id[g]))
            if nxt not in parent:
                budget[0] += 1
                if budget[0] > cap:
                    raise CapExceeded("profile pairs", cap)
                parent[nxt] = (node, g)
                queue.append(nxt)

    def word_of(prof):
        node = found[prof]
        out = []
        while parent[node] is not None:
            node, g = parent[node]
            out.append(g)
        return "".join(reversed(out))

    return found, word_of


@dataclass(frozen=True)
class SimonLevelResult:
    """Outcome of the level-n test.

    ``k_profiles`` is the set of profiles of K-words (a separator when
    ``separable``); ``cross_pair`` is a K-word and an L-word with equal
    profiles when not separable.
    """

    n: int
    separable: bool
    cross_pair: tuple | None
    _raw_profiles: frozenset = field(default=frozenset(), repr=False, compare=False)
    _space: object = field(default=None, repr=False, compare=False)

    @cached_property
    def k_profiles(self) -> frozenset:
        return frozenset(self._space.decode(p) for p in self._raw_profiles)

    def to_json(self):
        return {
            "n": self.n,
            "separable": self.separable,
            "k_profiles": [sorted(p, key=lambda w: (len(w), w)) for p in
                           sorted(self.k_profiles, key=lambda p: sorted(p))],
            "cross_pair": None if self.cross_pair is None else list(self.cross_pair),
        }


def simon_level_sep(k: Nfa, l: Nfa, n: int, alphabet: str | None = None,
                    cap: int = DEFAULT_PROFILE_CAP, deadline=NO_DEADLINE) -> SimonLevelResult:
    """Exact test for separability by a level-``n`` piecewise testable language."""
    space = _ProfileSpace(merge_alphabets(k.alphabet, l.alphabet, alphabet or ""), n)
    budget = [0]
    pk, k_word = _accepted_profiles(trim(k), space, cap, budget, deadline)
    pl, l_word = _accepted_profiles(trim(l), space, cap, budget, deadline)
    cross = None
    shared = set(pk) & set(pl)
    if shared:
        pairs = [(k_word(p), l_word(p)) for p in shared]
        cross = min(pairs, key=lambda uv: (len(uv[0]) + len(uv[1]), uv))
    return SimonLevelResult(n, not shared, cross, frozenset(pk), space)


@dataclass(frozen=True)
class Conclusive:
    separable: bool
    level: int

    def to_json(self):
        return {"result": "conclusive", "separable": self.separable, "level": self.level}


@dataclass(frozen=True)
class NecessaryConditionHolds:
    """Equal-profile cross pairs exist at every level up to ``level``.

    This is necessary for non-separability but never proves it.
    """

    level: int
    cross_pairs: tuple = ()

    def to_json(self):
        return {"result": "necessary-condition-holds", "level": self.level,
                "cross_pairs": [list(p) for p in self.cross_pairs]}


@dataclass(frozen=True)
class Inconclusive:
    level: int
    reason: str

    def to_json(self):
        return {"result": "inconclusive", "level": self.level, "reason": self.reason}


def pt_oracle(k: Nfa, l: Nfa, max_level: int, alphabet: str | None = None,
              cap: int = DEFAULT_PROFILE_CAP, deadline=NO_DEADLINE):
    """Least level ``n <= max_level`` at which K and L separate, if any."""
    pairs = []
    for n in range(max_level + 1):
        try:
            r = simon_level_sep(k, l, n, alphabet, cap, deadline)
        except LimitExceeded as exc:
            return Inconclusive(n, str(exc))
        if r.separable:
            return Conclusive(True, n)
        pairs.append(r.cross_pair)
    return NecessaryConditionHolds(max_level, tuple(pairs))


# -- zigzags -------------------------------------------------------------------


@dataclass(frozen=True)
class ZigzagCertificate:
    """A ≼-chain of words whose memberships alternate between K and L."""

    words: tuple
    tags: tuple

    def __len__(self):
        return len(self.words)

    def to_json(self):
        return {"words": list(self.words), "tags": list(self.tags)}


def validate_zigzag(k: Nfa, l: Nfa, cert: ZigzagCertificate) -> bool:
    if not cert.words or len(cert.words) != len(cert.tags):
        return False
    langs = {"K": k, "L": l}
    for i, (w, t) in enumerate(zip(cert.words, cert.tags)):
        if t not in langs or not member(langs[t], w):
            return False
        if i and (cert.tags[i - 1] == t or not is_subsequence(cert.words[i - 1], w)):
            return False
    return True


def bounded_zigzag_search(k: Nfa, l: Nfa, max_len: int, max_word_len: int,
                          word_cap: int = DEFAULT_WORD_CAP,
                          deadline=NO_DEADLINE) -> ZigzagCertificate | None:
    """Longest zigzag (at most ``max_len`` words) among words of length <= ``max_word_len``.

    Every K-word and L-word within the length bound is enumerated, and a
    longest chain ending at each tagged word is computed in length order.
    Among longest chains the one with the length-lex least last word wins,
    with predecessors chosen the same way. A word in K ∩ L yields the
    constant chain ``w, w, ...``.
    """
    if max_len < 1 or max_word_len < 0:
        raise ValueError("bounds must be positive")
    kw = enumerate_words(k, max_word_len, deadline)
    lw = enumerate_words(l, max_word_len, deadline)
    if len(kw) + len(lw) > word_cap:
        raise CapExceeded("zigzag words", word_cap)
    nodes = sorted([(w, "K") for w in kw] + [(w, "L") for w in lw], key=lambda x: (len(x[0]), x[0], x[1]))
    if not nodes:
        return None
    both = set(kw) & set(lw)
    best = {}
    pred = {}
    for node in nodes:
        deadline.check()
        w, t = node
        if w in both:
            best[node] = max_len
            pred[node] = None
            continue
        f, p = 1, None
        for other in nodes:
            u, s = other
            if len(u) >= len(w):
                break
            if s != t and best[other] + 1 > f and is_subsequence(u, w):
                f, p = best[other] + 1, other
                if f >= max_len:
                    break
        best[node] = min(f, max_len)
        pred[node] = p

    top = max(best.values())
    end = next(node for node in nodes if best[node] == top)
    chain = []
    node = end
    while node is not None and len(chain) < top:
        w, t = node
        if w in both:
            # pad with the constant chain, alternating tags
            while len(chain) < top:
                chain.append(node)
                node = (w, "L" if node[1] == "K" else "K")
            break
        chain.append(node)
        node = pred[node]
    chain.reverse()
    return ZigzagCertificate(tuple(w for w, _ in chain), tuple(t for _, t in chain))


# -- layer separations ---------------------------------------------------------


@dataclass(frozen=True)
class Layer:
    """The upward closure of ``words``; ``side`` names the language it covers."""

    words: tuple
    side: str | None

    def to_json(self):
        return {"words": list(self.words), "side": self.side}


@dataclass(frozen=True)
class LayerSeparation:
    layers: tuple

    def __len__(self):
        return len(self.layers)

    def __iter__(self):
        return iter(self.layers)

    def to_json(self):
        return {"layers": [layer.to_json() for layer in self.layers]}


def _layer(xs, ys):
    return {w for w in xs if not any(is_subsequence(w, v) for v in ys)}


def layer_separation_finite(k_words, l_words) -> LayerSeparation:
    """Peel off, in rounds, the K-words and then the L-words lying below no
    word of the other language; each round's words form a layer.

    Rounds that remove nothing contribute no layer.
    """
    ks, ls = set(k_words), set(l_words)
    overlap = sorted(ks & ls, key=lambda w: (len(w), w))
    if overlap:
        raise OverlappingInputs(overlap[0])
    layers = []
    while ks or ls:
        lk = _layer(ks, ls)
        ll = _layer(ls, ks)
        for words, side in ((lk, "K"), (ll, "L")):
            if words:
                layers.append(Layer(tuple(sorted(words, key=lambda w: (len(w), w))), side))
        ks -= lk
        ls -= ll
    return LayerSeparation(tuple(layers))


def verify_layer_separation(k: Nfa, l: Nfa, layers: LayerSeparation, alphabet: str | None = None,
                            state_cap: int = 1 << 16) -> bool:
    """Check both layer-separation conditions with automata.

    1. Each layer minus the earlier ones meets at most one of K and L (and
       not the opposite of its declared side).
    2. K or L is included in the union of all layers.
    """
    ambient = merge_alphabets(k.alphabet, l.alphabet, alphabet or "",
                              *(w for layer in layers for w in layer.words))
    earlier = []
    for layer in layers:
        s = closure_union_dfa(layer.words, ambient, state_cap)
        fresh = intersect(s, complement_dfa(closure_union_dfa(earlier, ambient, state_cap)))
        hits_k = not is_empty(intersect(fresh, k))
        hits_l = not is_empty(intersect(fresh, l))
        if hits_k and hits_l:
            return False
        if (layer.side == "K" and hits_l) or (layer.side == "L" and hits_k):
            return False
        earlier.extend(layer.words)
    rest = complement_dfa(closure_union_dfa(earlier, ambient, state_cap))
    return is_empty(intersect(k, rest)) or is_empty(intersect(l, rest))
