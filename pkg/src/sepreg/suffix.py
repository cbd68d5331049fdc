"""Separation by suffix-closed (and, via reversal, prefix-closed) languages.

Three families, from most to least restrictive:

* single: one language ``Σ*w``;
* union: a finite union of ``Σ*w``;
* bc: finite boolean combinations of ``Σ*w``.

All three reduce to questions about ``I = pref(rev K) ∩ pref(rev L)``, the
reversed common suffixes of K-words and L-words.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from sepreg.errors import NO_DEADLINE, CapExceeded, EmptyLanguage, LimitExceeded
from sepreg.nfa import (
    Nfa,
    complement_dfa,
    determinize_bounded,
    enumerate_words,
    intersect,
    is_empty,
    is_infinite,
    member,
    merge_alphabets,
    prefixes,
    reverse,
    shortest_word,
    step,
    suffixes,
    trim,
    union,
    upward_suffix_closure,
    word_nfa,
    words_nfa,
)
from sepreg.verdict import Verdict

DEFAULT_DET_CAP = 4096
DEFAULT_WITNESS_CAP = 10_000


@dataclass(frozen=True)
class SuffixWitness:
    """A suffix-testable (or, with ``order="prefix"``, prefix-testable) separator.

    ``kind`` is ``single`` (``Σ*w`` for the one word in ``suffixes``), ``union``
    (the union of ``Σ*w`` over ``suffixes``) or ``bc`` (the words in ``exact``
    together with ``Σ*w`` for ``w`` in ``suffixes``, all of length ``k``).
    For the prefix order every ``Σ*w`` reads ``wΣ*``.
    """

    kind: str
    suffixes: tuple
    exact: tuple = ()
    k: int | None = None
    order: str = "suffix"

    def reversed(self) -> SuffixWitness:
        flip = "prefix" if self.order == "suffix" else "suffix"
        return SuffixWitness(
            self.kind,
            tuple(sorted(w[::-1] for w in self.suffixes)),
            tuple(sorted(w[::-1] for w in self.exact)),
            self.k,
            flip,
        )

    def to_json(self):
        out = {"kind": self.kind, "order": self.order}
        key = "suffixes" if self.order == "suffix" else "prefixes"
        if self.kind == "single":
            out["word"] = self.suffixes[0]
        else:
            out[key] = list(self.suffixes)
        if self.kind == "bc":
            out["k"] = self.k
            out["exact"] = list(self.exact)
        elif self.kind == "union":
            out["length_bound"] = self.k
        return out


@dataclass(frozen=True)
class SuffixCertificate:
    """Why no separator exists.

    * ``overlap``: ``words[0]`` lies in both K and L;
    * ``suffix-of``: ``words[0]`` ∈ K is a suffix of ``words[1]`` ∈ L;
    * ``single-lcs``: ``words[1]`` ∈ L ends with ``words[0]`` = lcs(K);
    * ``unbounded``: common suffixes are unbounded; ``words`` samples a
      K-word and an L-word sharing a suffix of length ``words[2]``;
    * ``no-word``: K is empty and every word is a suffix of an L-word.
    """

    reason: str
    words: tuple = ()
    order: str = "suffix"

    def reversed(self) -> SuffixCertificate:
        flip = "prefix" if self.order == "suffix" else "suffix"
        words = tuple(w[::-1] if isinstance(w, str) else w for w in self.words)
        return SuffixCertificate(self.reason, words, flip)

    def to_json(self):
        return {"reason": self.reason, "words": list(self.words), "order": self.order}


def _ambient(k: Nfa, l: Nfa, alphabet: str | None) -> str:
    return merge_alphabets(k.alphabet, l.alphabet, alphabet or "")


def lcs(k: Nfa) -> str:
    """Longest common suffix of all words of L(k)."""
    r = trim(reverse(k))
    if not r.accepting:
        raise EmptyLanguage("lcs of an empty language")
    current = r.initial
    out = []
    while current.isdisjoint(r.accepting):
        symbols = {g for p in current for g, _ in r.out_edges[p]}
        if len(symbols) != 1:
            break
        (g,) = symbols
        out.append(g)
        current = step(r, current, g)
    return "".join(out)[::-1]


def _suffix_closure_of_word(w: str, ambient: str) -> Nfa:
    return upward_suffix_closure(word_nfa(w, ambient), ambient)


def _common_reversed_suffixes(k: Nfa, l: Nfa) -> Nfa:
    """Automaton for I = pref(rev K) ∩ pref(rev L), trimmed."""
    return trim(intersect(prefixes(trim(reverse(k))), prefixes(trim(reverse(l)))))


def _longest_word_length(acyclic: Nfa) -> int:
    """Length of the longest accepted word of a trimmed acyclic automaton (-1 if empty)."""
    if not acyclic.accepting:
        return -1
    memo = {}

    def longest(p):
        # iterative post-order to stay clear of recursion limits
        stack = [(p, False)]
        while stack:
            s, expanded = stack.pop()
            if s in memo:
                continue
            if expanded:
                best = 0 if s in acyclic.accepting else -1
                for _, q in acyclic.out_edges[s]:
                    if memo[q] >= 0:
                        best = max(best, memo[q] + 1)
                memo[s] = best
            else:
                stack.append((s, True))
                stack.extend((q, False) for _, q in acyclic.out_edges[s] if q not in memo)
        return memo[p]

    return max(longest(s) for s in acyclic.initial)


def _words_of_length(a: Nfa, n: int, cap: int, deadline=NO_DEADLINE) -> list:
    """Words of exactly length ``n`` in L(a) (a must be trimmed), at most ``cap`` of them."""
    layer = [("", a.initial)]
    for _ in range(n):
        deadline.check()
        nxt = []
        for w, states in layer:
            for g in a.alphabet:
                s = step(a, states, g)
                if s:
                    nxt.append((w + g, s))
                    if len(nxt) > cap:
                        raise CapExceeded("witness enumeration", cap)
        layer = nxt
    return sorted(w for w, s in layer if not s.isdisjoint(a.accepting))


def _find_suffix_pair(k: Nfa, l: Nfa, ambient: str):
    """(u, v) with u ∈ K a suffix of v ∈ L, or None."""
    v = shortest_word(intersect(upward_suffix_closure(k, ambient), l))
    if v is None:
        return None
    u = next(v[i:] for i in range(len(v) + 1) if member(k, v[i:]))
    return u, v


def _path_word(a: Nfa, n: int) -> str:
    """Label of some length-``n`` path from an initial state (a must be trimmed
    with every state accepting, so the label is accepted)."""
    dead = set()

    def walk(p, room):
        stack = [(p, room, iter(sorted(a.out_edges[p])))]
        word = []
        while stack:
            s, left, it = stack[-1]
            if left == 0:
                return "".join(word)
            for g, q in it:
                if (q, left - 1) not in dead:
                    word.append(g)
                    stack.append((q, left - 1, iter(sorted(a.out_edges[q]))))
                    break
            else:
                dead.add((s, left))
                stack.pop()
                if word:
                    word.pop()
        return None

    for s in sorted(a.initial):
        w = walk(s, n)
        if w is not None:
            return w
    raise ValueError(f"no path of length {n}")


def _unbounded_sample(k: Nfa, l: Nfa, i_aut: Nfa):
    """A K-word and L-word sharing a suffix longer than I's state count."""
    n = i_aut.state_count + 1
    common = _path_word(i_aut, n)[::-1]
    ku = shortest_word(intersect(k, _ends_with(common, k.alphabet)))
    lu = shortest_word(intersect(l, _ends_with(common, l.alphabet)))
    return ku, lu, n


def _ends_with(w: str, alphabet: str) -> Nfa:
    alphabet = merge_alphabets(alphabet, w)
    return _suffix_closure_of_word(w, alphabet)


def _stats(t0, **extra):
    extra["elapsed_ms"] = (time.perf_counter() - t0) * 1000.0
    return extra


def decide_suffix_single(k: Nfa, l: Nfa, alphabet: str | None = None,
                         det_cap: int = DEFAULT_DET_CAP, deadline=NO_DEADLINE) -> Verdict:
    """Is there one ``Σ*w`` containing K and missing L?

    For nonempty K the only candidate worth testing is ``w = lcs(K)`` (possibly
    ε). For empty K any ``w`` that is no suffix of an L-word will do; the
    shortest one is found by determinizing ``suff(L)`` under ``det_cap``.
    """
    t0 = time.perf_counter()
    ambient = _ambient(k, l, alphabet)
    if is_empty(k):
        try:
            dfa = determinize_bounded(suffixes(trim(l)), det_cap, ambient, deadline)
        except LimitExceeded:
            return Verdict("suffix-single", None, stats=_stats(t0, caps_hit=["determinization"]),
                           note="empty K: determinization cap exceeded")
        w = shortest_word(complement_dfa(dfa))
        stats = _stats(t0, vertices=dfa.state_count)
        if w is None:
            return Verdict("suffix-single", False, certificate=SuffixCertificate("no-word"), stats=stats)
        return Verdict("suffix-single", True, witness=SuffixWitness("single", (w,)), stats=stats)
    w = lcs(k)
    product_ = intersect(_suffix_closure_of_word(w, ambient), l)
    v = shortest_word(product_)
    stats = _stats(t0, vertices=product_.state_count)
    if v is None:
        return Verdict("suffix-single", True, witness=SuffixWitness("single", (w,)), stats=stats)
    return Verdict("suffix-single", False, certificate=SuffixCertificate("single-lcs", (w, v)), stats=stats)


def _union_witness_words(k: Nfa, kstar: int, cap: int, deadline):
    """K-words shorter than ``kstar`` and length-``kstar`` suffixes of K-words."""
    short = enumerate_words(k, kstar - 1, deadline) if kstar > 0 else []
    if len(short) > cap:
        raise CapExceeded("witness enumeration", cap)
    rk = trim(reverse(k))
    tails = [] if not rk.accepting else _words_of_length(prefixes(rk), kstar, cap, deadline)
    return short, sorted(w[::-1] for w in tails)


def decide_suffix_union(k: Nfa, l: Nfa, alphabet: str | None = None,
                        witness_cap: int = DEFAULT_WITNESS_CAP, deadline=NO_DEADLINE) -> Verdict:
    """Is there a finite union of ``Σ*w`` containing K and missing L?

    Separable iff no K-word is a suffix of an L-word and K, L have a bounded
    set of common suffixes. The witness uses the smallest bound ``k*``: every
    K-word shorter than ``k*`` plus every length-``k*`` suffix of a K-word.
    """
    t0 = time.perf_counter()
    ambient = _ambient(k, l, alphabet)
    pair = _find_suffix_pair(k, l, ambient)
    if pair is not None:
        return Verdict("suffix-union", False, certificate=SuffixCertificate("suffix-of", pair),
                       stats=_stats(t0))
    i_aut = _common_reversed_suffixes(k, l)
    if is_infinite(i_aut):
        cert = SuffixCertificate("unbounded", _unbounded_sample(k, l, i_aut))
        return Verdict("suffix-union", False, certificate=cert,
                       stats=_stats(t0, vertices=i_aut.state_count))
    kstar = _longest_word_length(i_aut) + 1
    stats = _stats(t0, vertices=i_aut.state_count)
    try:
        short, tails = _union_witness_words(k, kstar, witness_cap, deadline)
    except CapExceeded:
        stats["caps_hit"] = ["witness enumeration"]
        return Verdict("suffix-union", True, stats=stats, note="witness enumeration cap exceeded")
    words = tuple(sorted(set(short) | set(tails), key=lambda w: (len(w), w)))
    stats["elapsed_ms"] = (time.perf_counter() - t0) * 1000.0
    return Verdict("suffix-union", True, witness=SuffixWitness("union", words, k=kstar), stats=stats)


def decide_suffix_bc(k: Nfa, l: Nfa, alphabet: str | None = None,
                     witness_cap: int = DEFAULT_WITNESS_CAP, deadline=NO_DEADLINE) -> Verdict:
    """Is there a boolean combination of ``Σ*w`` containing K and missing L?

    Separable iff K ∩ L = ∅ and K, L have a bounded set of common suffixes.
    With ``k*`` one more than the longest common suffix, the separator is the
    K-words shorter than ``k*`` (each one exactly) together with ``Σ*u`` for
    the length-``k*`` suffixes ``u`` of K-words.
    """
    t0 = time.perf_counter()
    both = intersect(k, l)
    w = shortest_word(both)
    if w is not None:
        return Verdict("suffix-bc", False, certificate=SuffixCertificate("overlap", (w,)),
                       stats=_stats(t0, vertices=both.state_count))
    i_aut = _common_reversed_suffixes(k, l)
    if is_infinite(i_aut):
        cert = SuffixCertificate("unbounded", _unbounded_sample(k, l, i_aut))
        return Verdict("suffix-bc", False, certificate=cert, stats=_stats(t0, vertices=i_aut.state_count))
    kstar = _longest_word_length(i_aut) + 1
    stats = _stats(t0, vertices=i_aut.state_count)
    try:
        short, tails = _union_witness_words(k, kstar, witness_cap, deadline)
    except CapExceeded:
        stats["caps_hit"] = ["witness enumeration"]
        return Verdict("suffix-bc", True, stats=stats, note="witness enumeration cap exceeded")
    witness = SuffixWitness("bc", tuple(tails), exact=tuple(short), k=kstar)
    stats["elapsed_ms"] = (time.perf_counter() - t0) * 1000.0
    return Verdict("suffix-bc", True, witness=witness, stats=stats)


SUFFIX_DECIDERS = {
    "single": decide_suffix_single,
    "union": decide_suffix_union,
    "bc": decide_suffix_bc,
}


def decide_suffix(family: str, k: Nfa, l: Nfa, **kwargs) -> Verdict:
    return SUFFIX_DECIDERS[family](k, l, **kwargs)


def decide_prefix(family: str, k: Nfa, l: Nfa, **kwargs) -> Verdict:
    """Prefix-order twin: the suffix decider on the reversed automata."""
    v = decide_suffix(family, reverse(k), reverse(l), **kwargs)
    return Verdict(
        "prefix-" + family,
        v.separable,
        witness=None if v.witness is None else v.witness.reversed(),
        certificate=None if v.certificate is None else v.certificate.reversed(),
        stats=v.stats,
        note=v.note,
    )


def witness_language(witness: SuffixWitness, ambient: str) -> Nfa:
    """The separator described by ``witness`` as an automaton."""
    if witness.order == "prefix":
        return reverse(witness_language(witness.reversed(), ambient))
    parts = [upward_suffix_closure(words_nfa(witness.suffixes, ambient), ambient)]
    if witness.exact:
        parts.append(words_nfa(witness.exact, ambient))
    return parts[0] if len(parts) == 1 else union(*parts)


def check_suffix_witness(k: Nfa, l: Nfa, witness: SuffixWitness, alphabet: str | None = None,
                         det_cap: int = DEFAULT_DET_CAP * 4) -> bool:
    """Re-verify a witness: shape matches its kind, K ⊆ S and S ∩ L = ∅."""
    if witness.kind == "single" and (len(witness.suffixes) != 1 or witness.exact):
        return False
    if witness.kind == "union" and witness.exact:
        return False
    if witness.kind == "bc" and any(len(w) != witness.k for w in witness.suffixes):
        return False
    ambient = merge_alphabets(_ambient(k, l, alphabet), *witness.suffixes, *witness.exact)
    sep = witness_language(witness, ambient)
    if not is_empty(intersect(sep, l)):
        return False
    comp = complement_dfa(determinize_bounded(sep, det_cap, ambient))
    return is_empty(intersect(k, comp))


def check_suffix_certificate(k: Nfa, l: Nfa, cert: SuffixCertificate) -> bool:
    """Re-verify the concrete words of a non-separability certificate."""
    if cert.order == "prefix":
        k, l = reverse(k), reverse(l)
        cert = cert.reversed()
    w = cert.words
    if cert.reason == "overlap":
        return member(k, w[0]) and member(l, w[0])
    if cert.reason == "suffix-of":
        return member(k, w[0]) and member(l, w[1]) and w[1].endswith(w[0])
    if cert.reason == "single-lcs":
        return not is_empty(k) and lcs(k) == w[0] and member(l, w[1]) and w[1].endswith(w[0])
    if cert.reason == "unbounded":
        u, v, n = w
        return (member(k, u) and member(l, v) and len(u) >= n and len(v) >= n
                and u[len(u) - n:] == v[len(v) - n:] and n > _common_reversed_suffixes(k, l).state_count)
    if cert.reason == "no-word":
        return is_empty(k)
    return False
