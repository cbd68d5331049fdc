import random

import pytest
from hypothesis import given, settings

from _support import all_subseqs, nfas, random_nfa, words_upto
from sepreg.errors import CapExceeded, SepregError
from sepreg.nfa import (
    Nfa,
    complement_dfa,
    determinize_bounded,
    enumerate_words,
    included,
    intersect,
    is_complete,
    is_deterministic,
    is_empty,
    is_infinite,
    member,
    prefixes,
    restrict,
    reverse,
    sccs,
    shortest_word,
    suffixes,
    trim,
    union,
    upward_subseq_closure,
    upward_suffix_closure,
    word_nfa,
    words_nfa,
)
from sepreg.regex import compile_regex as rx


def lang(a, n=6):
    return set(enumerate_words(a, n))


class TestConstruction:
    def test_rejects_out_of_range_state(self):
        with pytest.raises(SepregError):
            Nfa(2, "a", [(0, "a", 2)], {0}, ())

    def test_rejects_empty_initial(self):
        with pytest.raises(SepregError):
            Nfa(1, "a", (), (), ())

    def test_rejects_foreign_symbol(self):
        with pytest.raises(SepregError):
            Nfa(1, "a", [(0, "b", 0)], {0}, ())

    def test_word_and_words_nfa(self):
        assert lang(word_nfa("ab")) == {"ab"}
        assert lang(words_nfa(["", "a", "ba"])) == {"", "a", "ba"}

    def test_union(self):
        assert lang(union(rx("a"), rx("bb"))) == {"a", "bb"}


class TestMember:
    def test_examples(self):
        a = rx("a(ba)*")
        assert member(a, "aba")
        assert not member(a, "ab")
        assert not member(rx("#"), "")

    def test_foreign_symbol_is_rejected(self):
        assert not member(rx("a*"), "ab")


class TestProducts:
    def test_intersect_examples(self):
        assert lang(intersect(rx("a*"), rx("(aa)*"))) == {"", "aa", "aaaa", "aaaaaa"}
        assert is_empty(intersect(rx("a"), rx("b")))
        assert lang(intersect(rx("a+b"), rx("b+c"))) == {"b"}

    def test_reverse_examples(self):
        assert lang(reverse(rx("ab"))) == {"ba"}
        assert lang(reverse(rx("a*")), 4) == lang(rx("a*"), 4)
        assert lang(reverse(rx("ab+ba"))) == {"ab", "ba"}

    def test_reverse_of_empty_language(self):
        assert is_empty(reverse(rx("#")))
        assert is_empty(reverse(Nfa(2, "a", [(0, "a", 1)], {0}, ())))

    def test_prefixes_examples(self):
        assert lang(prefixes(rx("ab"))) == {"", "a", "ab"}
        assert is_empty(prefixes(rx("#")))
        # the empty word is a prefix too
        expected = {w for w in words_upto("ab", 6) if member(rx("@+a(bb)*+ab(bb)*"), w)}
        assert lang(prefixes(rx("a(bb)*"))) == expected

    def test_prefixes_ignores_dead_states(self):
        a = Nfa(3, "ab", [(0, "a", 1), (0, "b", 2)], {0}, {1})
        assert lang(prefixes(a)) == {"", "a"}

    def test_suffixes(self):
        assert lang(suffixes(rx("ab"))) == {"", "b", "ab"}


class TestClosures:
    def test_subseq_examples(self):
        c = upward_subseq_closure(rx("b"), "ab")
        assert all(member(c, w) == ("b" in w) for w in words_upto("ab", 5))
        c = upward_subseq_closure(rx("@"), "a")
        assert lang(c, 4) == set(words_upto("a", 4))
        c = upward_subseq_closure(rx("ab+c"), "abc")
        for w in words_upto("abc", 4):
            assert member(c, w) == ("ab" in all_subseqs(w) or "c" in w)

    def test_suffix_examples(self):
        c = upward_suffix_closure(rx("b"), "ab")
        assert all(member(c, w) == w.endswith("b") for w in words_upto("ab", 5))
        assert lang(upward_suffix_closure(rx("@"), "ab"), 3) == set(words_upto("ab", 3))
        c = upward_suffix_closure(rx("ab"), "ab")
        assert all(member(c, w) == w.endswith("ab") for w in words_upto("ab", 4))

    def test_ambient_must_cover_alphabet(self):
        with pytest.raises(SepregError):
            upward_subseq_closure(rx("ab"), "a")


class TestQueries:
    def test_is_empty(self):
        assert is_empty(rx("#"))
        assert not is_empty(rx("a*"))

    def test_is_infinite(self):
        assert is_infinite(rx("a*"))
        assert not is_infinite(rx("a+ab"))
        assert is_infinite(rx("(ab)*c"))

    def test_is_infinite_ignores_useless_cycles(self):
        a = Nfa(3, "ab", [(0, "a", 1), (2, "b", 2), (0, "b", 2)], {0}, {1})
        assert not is_infinite(a)

    def test_shortest_word(self):
        assert shortest_word(rx("a*b")) == "b"
        assert shortest_word(rx("#")) is None
        assert shortest_word(rx("aa+ba+b")) == "b"
        assert shortest_word(rx("ba+ab")) == "ab"

    def test_enumerate_words(self):
        assert enumerate_words(rx("a*"), 2) == ["", "a", "aa"]
        assert enumerate_words(rx("#"), 5) == []
        assert enumerate_words(rx("(a+b)b"), 2) == ["ab", "bb"]

    def test_restrict(self):
        assert lang(restrict(rx("(ab)*"), "a")) == {""}
        assert lang(restrict(rx("a*b*"), "b"), 3) == {"", "b", "bb", "bbb"}

    def test_trim_keeps_language(self):
        a = Nfa(4, "ab", [(0, "a", 1), (1, "b", 2), (3, "a", 0)], {0}, {2})
        t = trim(a)
        assert t.state_count == 3
        assert lang(t) == {"ab"}


class TestScc:
    def test_cycle_then_exit(self):
        a = Nfa(3, "abc", [(0, "a", 1), (1, "b", 0), (0, "c", 2)], {0}, {2})
        d = sccs(a)
        assert d.alphabet_of_state(0) == frozenset("ab")
        assert d.component(0) == d.component(1)
        assert d.alphabet_of_state(2) == frozenset()

    def test_acyclic(self):
        d = sccs(rx("abc"))
        assert len(set(d.component_of)) == 4
        assert all(not s for s in d.component_alphabet)

    def test_single_loop_state(self):
        d = sccs(Nfa(1, "ab", [(0, "a", 0), (0, "b", 0)], {0}, {0}))
        assert d.component_alphabet == (frozenset("ab"),)

    def test_order_is_topological(self):
        a = rx("a(b+c)*d(e)*")
        d = sccs(a)
        pos = {c: i for i, c in enumerate(d.order)}
        for p, _, q in a.transitions:
            assert pos[d.component(p)] <= pos[d.component(q)]

    @settings(max_examples=80, deadline=None)
    @given(nfas(max_states=4, alphabet="abc"))
    def test_component_alphabet_is_inner_labels(self, a):
        d = sccs(a)
        reach = {p: {q for q in range(a.state_count) if q in _reach(a, p)} for p in range(a.state_count)}
        for p in range(a.state_count):
            same = {q for q in range(a.state_count) if q in reach[p] and p in reach[q]}
            assert {q for q in range(a.state_count) if d.component(q) == d.component(p)} == same
            inner = {g for x, g, y in a.transitions if x in same and y in same}
            assert d.alphabet_of_state(p) == inner


def _reach(a, p):
    seen, stack = {p}, [p]
    while stack:
        x = stack.pop()
        for _, y in a.out_edges[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


class TestDeterminize:
    def test_ab_has_four_states_with_sink(self):
        d = determinize_bounded(rx("ab"), 16)
        assert d.state_count == 4
        assert is_deterministic(d) and is_complete(d)
        assert lang(d) == {"ab"}

    def test_dfa_input_stays_equivalent(self):
        d1 = determinize_bounded(rx("a*b"), 16)
        d2 = determinize_bounded(d1, d1.state_count + 1)
        assert lang(d2) == lang(d1)

    def test_exponential_family_hits_cap(self):
        with pytest.raises(CapExceeded):
            determinize_bounded(rx("(a+b)*a(a+b)(a+b)(a+b)(a+b)"), 16)

    def test_complement(self):
        d = complement_dfa(determinize_bounded(rx("a*"), 8, "ab"))
        assert lang(d, 3) == set(words_upto("ab", 3)) - lang(rx("a*"), 3)

    def test_complement_needs_complete_dfa(self):
        with pytest.raises(SepregError):
            complement_dfa(rx("a+ab"))

    def test_included(self):
        assert included(rx("ab"), rx("a*b"), 64)
        assert not included(rx("a*b"), rx("ab"), 64)


@settings(max_examples=150, deadline=None)
@given(nfas(max_states=4, alphabet="abc"))
def test_reversal_involution_and_semantics(a):
    words = list(words_upto("abc", 5))
    rr = reverse(reverse(a))
    r = reverse(a)
    for w in words:
        assert member(rr, w) == member(a, w)
        assert member(r, w) == member(a, w[::-1])


@settings(max_examples=100, deadline=None)
@given(nfas(max_states=3, alphabet="ab"))
def test_prefix_semantics(a):
    bound = 2 * a.state_count
    p = prefixes(a)
    for u in words_upto("ab", 4):
        expected = any(member(a, u + v) for v in words_upto("ab", bound))
        assert member(p, u) == expected


@settings(max_examples=100, deadline=None)
@given(nfas(max_states=4, alphabet="ab"))
def test_closure_semantics(a):
    words = enumerate_words(a, 6)
    sub = upward_subseq_closure(a, "ab")
    suf = upward_suffix_closure(a, "ab")
    for w in words_upto("ab", 6):
        assert member(sub, w) == any(v in all_subseqs(w) for v in words if len(v) <= len(w))
        assert member(suf, w) == any(w.endswith(v) for v in words)


@settings(max_examples=150, deadline=None)
@given(nfas(max_states=5, alphabet="ab"))
def test_is_infinite_pumping(a):
    n = a.state_count
    long_words = [w for w in enumerate_words(a, 2 * n - 1) if len(w) >= n]
    assert is_infinite(a) == bool(long_words)


@settings(max_examples=100, deadline=None)
@given(nfas(max_states=4, alphabet="ab"))
def test_shortest_word_is_minimal(a):
    w = shortest_word(a)
    words = enumerate_words(a, 8)
    if w is None:
        assert words == [] and is_empty(a)
    else:
        assert member(a, w)
        assert not any(len(v) < len(w) for v in words)
        assert w == min(v for v in words if len(v) == len(w))


@settings(max_examples=100, deadline=None)
@given(nfas(max_states=4, alphabet="ab"))
def test_determinize_equivalence(a):
    d = determinize_bounded(a, 64)
    assert is_deterministic(d) and is_complete(d)
    for w in words_upto("ab", 8):
        assert member(d, w) == member(a, w)


def test_enumerate_matches_member():
    rng = random.Random(3)
    for _ in range(40):
        a = random_nfa(rng, 4, "ab")
        assert enumerate_words(a, 5) == [w for w in words_upto("ab", 5) if member(a, w)]
