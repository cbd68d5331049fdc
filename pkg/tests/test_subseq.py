import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import (
    brute_subseq_single,
    brute_subseq_union,
    finite_nfa,
    is_subseq,
    nfas,
    random_finite_pair,
    random_pair,
    words_upto,
)
from sepreg.nfa import enumerate_words, intersect, is_empty, member, upward_subseq_closure
from sepreg.pt import decide_pt
from sepreg.regex import compile_regex as rx
from sepreg.subseq import (
    check_single_witness,
    check_union_witness,
    closure_union_dfa,
    decide_subseq_single,
    decide_subseq_union,
    greedy_embedding_dfa,
    is_subsequence,
    minimal_words,
)


class TestGreedyEmbedding:
    def test_empty_word_accepts_everything(self):
        d = greedy_embedding_dfa("", "ab")
        assert all(member(d, u) for u in words_upto("ab", 4))

    def test_ab(self):
        d = greedy_embedding_dfa("ab", "ab")
        for u in words_upto("ab", 4):
            assert member(d, u) == is_subseq("ab", u)
        assert member(d, "bab") and not member(d, "ba")

    def test_aa(self):
        d = greedy_embedding_dfa("aa", "a")
        assert not member(d, "a")
        assert member(d, "aa") and member(d, "aaa")

    def test_shape(self):
        d = greedy_embedding_dfa("abc", "abcd")
        assert d.state_count == 4
        assert len(d.transitions) == 4 * 4

    @settings(max_examples=200, deadline=None)
    @given(st.text("abc", max_size=5), st.lists(st.text("abc", max_size=10), max_size=10))
    def test_semantics(self, w, samples):
        d = greedy_embedding_dfa(w, "abc")
        for u in samples:
            assert member(d, u) == is_subseq(w, u) == is_subsequence(w, u)


def test_minimal_words():
    assert minimal_words(["ab", "a", "ba", "bb", "abb"]) == ["a", "bb"]
    assert minimal_words([]) == []


def test_closure_union_dfa():
    d = closure_union_dfa(["ab", "c"], "abc")
    for u in words_upto("abc", 4):
        assert member(d, u) == (is_subseq("ab", u) or "c" in u)
    assert is_empty(closure_union_dfa([], "ab"))


class TestUnion:
    def test_examples(self):
        assert decide_subseq_union(rx("ab*"), rx("b*")).separable is True
        assert decide_subseq_union(rx("a"), rx("ab")).separable is False
        assert decide_subseq_union(rx("ab"), rx("a")).separable is True
        assert decide_subseq_union(rx("#"), rx("(a+b)*")).separable is True

    def test_witness(self):
        v = decide_subseq_union(rx("ab*+ca"), rx("b*c"))
        assert v.separable is True
        assert v.witness.minimal_words == ("a",)
        assert v.witness.complete is True
        assert check_union_witness(rx("ab*+ca"), rx("b*c"), v.witness)

    def test_minimal_words_beyond_bound_are_incomplete(self):
        v = decide_subseq_union(rx("aaa"), rx("b"), minimal_word_bound=2)
        assert v.witness.minimal_words == ()
        assert v.witness.complete is False
        assert check_union_witness(rx("aaa"), rx("b"), v.witness)

    def test_empty_k_witness(self):
        v = decide_subseq_union(rx("#"), rx("a"))
        assert v.witness.complete is True and v.witness.minimal_words == ()

    @settings(max_examples=150, deadline=None)
    @given(nfas(max_states=4, alphabet="ab"), nfas(max_states=4, alphabet="ab"))
    def test_matches_closure_definition(self, a, b):
        v = decide_subseq_union(a, b)
        assert v.separable == is_empty(intersect(upward_subseq_closure(a, "ab"), b))
        if v.separable:
            assert check_union_witness(a, b, v.witness)

    def test_finite_oracle(self):
        rng = random.Random(21)
        for _ in range(200):
            ks, ls = random_finite_pair(rng, alphabet="abc", disjoint=False)
            v = decide_subseq_union(finite_nfa(ks, "abc"), finite_nfa(ls, "abc"))
            assert v.separable == brute_subseq_union(ks, ls), (ks, ls)


class TestSingle:
    def test_lcs_instance(self):
        v = decide_subseq_single(rx("ab+ba"), rx("@"))
        assert v.separable is True and v.witness == "a"

    def test_lcs_instance_not_separable(self):
        assert decide_subseq_single(rx("ab+ba"), rx("@+a+b")).separable is False

    def test_single_word(self):
        v = decide_subseq_single(rx("a"), rx("#"))
        assert v.separable is True and v.witness == "a"

    def test_witness_is_saturated(self):
        v = decide_subseq_single(rx("abc+abd"), rx("c"))
        assert v.witness == "ab"

    def test_depth_cap_gives_inconclusive(self):
        v = decide_subseq_single(rx("aab"), rx("a+b+ab"), depth_cap=1)
        assert v.separable is None and v.stats["caps_hit"] == ["depth"]
        assert decide_subseq_single(rx("aab"), rx("a+b+ab")).separable is True

    def test_empty_k(self):
        v = decide_subseq_single(rx("#"), rx("a*"), alphabet="ab")
        assert v.separable is True and v.witness == "b"
        assert decide_subseq_single(rx("#"), rx("(a+b)*")).separable is False
        v = decide_subseq_single(rx("#"), rx("ab+ba"))
        assert v.witness == "aa"

    def test_empty_k_cap(self):
        v = decide_subseq_single(rx("#"), rx("(a+b)*a(a+b)(a+b)(a+b)(a+b)"), det_cap=4)
        # every word is a subsequence of some L-word, and the closure stays small
        assert v.separable is False

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_lcs_family_is_fast(self, n):
        # K = {a^n b^n, b^n a^n}: the common subsequences are a^n and b^n
        k = rx(f"{'a' * n}{'b' * n}+{'b' * n}{'a' * n}")
        v = decide_subseq_single(k, rx("@"))
        assert v.separable is True and v.witness == "a" * n
        assert v.stats["elapsed_ms"] < 1000

    def test_finite_oracle(self):
        rng = random.Random(22)
        for _ in range(300):
            ks, ls = random_finite_pair(rng, alphabet="abc", disjoint=False)
            k, l = finite_nfa(ks, "abc"), finite_nfa(ls, "abc")
            v = decide_subseq_single(k, l, alphabet="abc")
            assert v.separable == brute_subseq_single(ks, ls, "abc"), (ks, ls)
            if v.separable:
                assert check_single_witness(k, l, v.witness, "abc")

    @settings(max_examples=150, deadline=None)
    @given(nfas(max_states=4, alphabet="ab"), nfas(max_states=4, alphabet="ab"))
    def test_witnesses_recheck(self, a, b):
        v = decide_subseq_single(a, b)
        if v.separable:
            w = v.witness
            assert check_single_witness(a, b, w)
            for u in enumerate_words(a, 6):
                assert is_subseq(w, u)
            for u in enumerate_words(b, 6):
                assert not is_subseq(w, u)


def test_family_chain():
    rng = random.Random(23)
    for _ in range(200):
        a, b = random_pair(rng, max_states=4, alphabet="ab")
        single = decide_subseq_single(a, b).separable
        union = decide_subseq_union(a, b).separable
        if single:
            assert union
        if union:
            assert decide_pt(a, b).separable
