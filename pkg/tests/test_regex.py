import random

import pytest
from hypothesis import given, settings

from _support import regex_asts, regex_matches, words_upto
from sepreg.errors import NestedEmptyError, RegexSyntaxError
from sepreg.nfa import enumerate_words, member
from sepreg.regex import Concat, Empty, Epsilon, Star, Symbol, Union, compile_regex, parse_regex, regex_to_nfa


def test_precedence():
    assert parse_regex("ab+c*") == Union(Concat(Symbol("a"), Symbol("b")), Star(Symbol("c")))


def test_epsilon_and_empty():
    assert parse_regex("@") == Epsilon()
    assert parse_regex("#") == Empty()
    assert enumerate_words(compile_regex("@"), 3) == [""]
    assert enumerate_words(compile_regex("#"), 3) == []


def test_whitespace_is_ignored():
    assert parse_regex("a(ba)*aab ca bb (bc)*") == parse_regex("a(ba)*aabcabb(bc)*")


def test_running_example_language():
    a = compile_regex("a(ba)*aab ca bb (bc)*")
    assert member(a, "aaabcabb")
    assert member(a, "abaaabcabbbcbc")
    assert not member(a, "aabcabb")


@pytest.mark.parametrize("text, offset", [("a+*", 2), ("(", 1), ("a)", 1), ("ab$", 2), ("", 0), ("a++b", 2)])
def test_syntax_errors_carry_offset(text, offset):
    with pytest.raises(RegexSyntaxError) as info:
        parse_regex(text)
    assert info.value.offset == offset


def test_nested_empty_rejected():
    with pytest.raises(NestedEmptyError) as info:
        parse_regex("a+#")
    assert info.value.offset == 2
    with pytest.raises(NestedEmptyError):
        parse_regex("(#)*")


def test_union_language():
    a = compile_regex("a+b")
    assert [w for w in words_upto("ab", 2) if member(a, w)] == ["a", "b"]


def test_alphabet_is_used_glyphs():
    assert compile_regex("b(ca)*").alphabet == "abc"
    assert compile_regex("@").alphabet == ""


def test_example_membership_against_backtracking():
    text = "a(abab)*c(acac)*"
    ast = parse_regex(text)
    a = regex_to_nfa(ast)
    rng = random.Random(11)
    samples = ["".join(rng.choice("abc") for _ in range(rng.randint(0, 10))) for _ in range(50)]
    samples += ["ac", "aababcacac", "aababc"]
    for w in samples:
        assert member(a, w) == regex_matches(ast, w)


@settings(max_examples=200, deadline=None)
@given(regex_asts())
def test_nfa_agrees_with_backtracking(ast):
    a = regex_to_nfa(ast)
    for w in words_upto("ab", 6):
        assert member(a, w) == regex_matches(ast, w)


@settings(max_examples=100, deadline=None)
@given(regex_asts())
def test_print_parse_round_trip(ast):
    assert parse_regex(str(ast)) is not None
    again = regex_to_nfa(parse_regex(str(ast)))
    a = regex_to_nfa(ast)
    for w in words_upto("ab", 5):
        assert member(again, w) == member(a, w)
