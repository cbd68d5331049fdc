"""Separability of regular languages by piecewise testable, subsequence-closed,
suffix-closed and prefix-closed languages."""

from sepreg.errors import (
    CapExceeded,
    Deadline,
    DeadlineExceeded,
    EmptyLanguage,
    FormatError,
    LimitExceeded,
    NestedEmptyError,
    OverlappingInputs,
    ParseError,
    RegexSyntaxError,
    SepregError,
)
from sepreg.kernels import BACKEND
from sepreg.nfa import Nfa
from sepreg.nfafile import parse_automaton_file, write_automaton_file
from sepreg.oracles import (
    bounded_zigzag_search,
    layer_separation_finite,
    pt_oracle,
    simon_level_sep,
    subseq_profile,
    validate_zigzag,
    verify_layer_separation,
)
from sepreg.pt import build_synch_graph, decide_pt, synch_to_dot, validate_synch_path
from sepreg.regex import compile_regex, parse_regex, regex_to_nfa
from sepreg.subseq import decide_subseq_single, decide_subseq_union, greedy_embedding_dfa
from sepreg.suffix import (
    decide_prefix,
    decide_suffix,
    decide_suffix_bc,
    decide_suffix_single,
    decide_suffix_union,
    lcs,
)
from sepreg.verdict import FAMILIES, Verdict

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FAMILIES",
    "CapExceeded",
    "Deadline",
    "DeadlineExceeded",
    "EmptyLanguage",
    "FormatError",
    "LimitExceeded",
    "NestedEmptyError",
    "Nfa",
    "OverlappingInputs",
    "ParseError",
    "RegexSyntaxError",
    "SepregError",
    "Verdict",
    "bounded_zigzag_search",
    "build_synch_graph",
    "compile_regex",
    "decide_prefix",
    "decide_pt",
    "decide_subseq_single",
    "decide_subseq_union",
    "decide_suffix",
    "decide_suffix_bc",
    "decide_suffix_single",
    "decide_suffix_union",
    "greedy_embedding_dfa",
    "layer_separation_finite",
    "lcs",
    "parse_automaton_file",
    "parse_regex",
    "pt_oracle",
    "regex_to_nfa",
    "simon_level_sep",
    "subseq_profile",
    "synch_to_dot",
    "validate_synch_path",
    "validate_zigzag",
    "verify_layer_separation",
    "write_automaton_file",
]
