"""Regular expression syntax and translation to automata.

Concrete syntax: symbols ``[a-z0-9]``, ``@`` for the empty word, ``#`` for the
empty language (whole expression only), ``+`` for union (lowest precedence),
juxtaposition for concatenation, postfix ``*`` (highest precedence) and
parentheses. Whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

from sepreg.errors import NestedEmptyError, RegexSyntaxError
from sepreg.nfa import GLYPHS, Nfa, make_alphabet


class RegexAst:
    """Base class of regex syntax tree nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Empty(RegexAst):
    def __str__(self):
        return "#"


@dataclass(frozen=True)
class Epsilon(RegexAst):
    def __str__(self):
        return "@"


@dataclass(frozen=True)
class Symbol(RegexAst):
    glyph: str

    def __str__(self):
        return self.glyph


@dataclass(frozen=True)
class Union(RegexAst):
    left: RegexAst
    right: RegexAst

    def __str__(self):
        return f"{self.left}+{self.right}"


@dataclass(frozen=True)
class Concat(RegexAst):
    left: RegexAst
    right: RegexAst

    def __str__(self):
        parts = []
        for side in (self.left, self.right):
            parts.append(f"({side})" if isinstance(side, Union) else str(side))
        return "".join(parts)


@dataclass(frozen=True)
class Star(RegexAst):
    child: RegexAst

    def __str__(self):
        if isinstance(self.child, (Symbol, Epsilon)):
            return f"{self.child}*"
        return f"({self.child})*"


class _Parser:
    def __init__(self, text):
        self.tokens = [(i, c) for i, c in enumerate(text) if not c.isspace()]
        self.pos = 0
        self.end = len(text)
        self.empty_offsets = []

    def peek(self):
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else None

    def offset(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else self.end

    def parse(self):
        node = self.union()
        if self.pos < len(self.tokens):
            raise RegexSyntaxError(f"unexpected {self.peek()!r}", self.offset())
        return node

    def union(self):
        node = self.concat()
        while self.peek() == "+":
            self.pos += 1
            node = Union(node, self.concat())
        return node

    def concat(self):
        node = None
        while self.peek() is not None and self.peek() not in "+)*":
            item = self.star()
            node = item if node is None else Concat(node, item)
        if node is None:
            what = "end of input" if self.peek() is None else repr(self.peek())
            raise RegexSyntaxError(f"expected an expression, found {what}", self.offset())
        return node

    def star(self):
        node = self.atom()
        while self.peek() == "*":
            self.pos += 1
            node = Star(node)
        return node

    def atom(self):
        c = self.peek()
        at = self.offset()
        if c == "(":
            self.pos += 1
            node = self.union()
            if self.peek() != ")":
                raise RegexSyntaxError("missing ')'", self.offset())
            self.pos += 1
            return node
        self.pos += 1
        if c in GLYPHS:
            return Symbol(c)
        if c == "@":
            return Epsilon()
        if c == "#":
            self.empty_offsets.append(at)
            return Empty()
        self.pos -= 1
        raise RegexSyntaxError(f"unexpected {c!r}", at)


def parse_regex(text: str) -> RegexAst:
    """Parse ``text``; raises ``RegexSyntaxError`` or ``NestedEmptyError``."""
    parser = _Parser(text)
    node = parser.parse()
    if parser.empty_offsets and node != Empty():
        raise NestedEmptyError(parser.empty_offsets[0])
    return node


def _thompson(node, trans, new_state):
    """Thompson fragment for ``node``; returns ``(entry, exit)``. ``None`` labels epsilon."""
    if isinstance(node, Symbol):
        s, t = new_state(), new_state()
        trans.append((s, node.glyph, t))
        return s, t
    if isinstance(node, Epsilon):
        s, t = new_state(), new_state()
        trans.append((s, None, t))
        return s, t
    if isinstance(node, Concat):
        s1, t1 = _thompson(node.left, trans, new_state)
        s2, t2 = _thompson(node.right, trans, new_state)
        trans.append((t1, None, s2))
        return s1, t2
    if isinstance(node, Union):
        s, t = new_state(), new_state()
        for side in (node.left, node.right):
            s1, t1 = _thompson(side, trans, new_state)
            trans.append((s, None, s1))
            trans.append((t1, None, t))
        return s, t
    if isinstance(node, Star):
        s, t = new_state(), new_state()
        s1, t1 = _thompson(node.child, trans, new_state)
        trans += [(s, None, s1), (t1, None, t), (s, None, t), (t1, None, s1)]
        return s, t
    raise TypeError(f"unexpected node {node!r}")


def _glyphs(node):
    if isinstance(node, Symbol):
        return node.glyph
    if isinstance(node, (Union, Concat)):
        return _glyphs(node.left) + _glyphs(node.right)
    if isinstance(node, Star):
        return _glyphs(node.child)
    return ""


def regex_to_nfa(ast: RegexAst) -> Nfa:
    """Thompson construction followed by epsilon elimination.

    Only the initial state and targets of symbol transitions survive; states
    are numbered in breadth-first discovery order.
    """
    alphabet = make_alphabet(_glyphs(ast))
    if isinstance(ast, Empty):
        return Nfa(1, alphabet, (), {0}, ())
    trans = []
    counter = iter(range(1 << 30))
    start, final = _thompson(ast, trans, lambda: next(counter))
    eps = {}
    sym = {}
    for p, a, q in trans:
        if a is None:
            eps.setdefault(p, []).append(q)
        else:
            sym.setdefault(p, []).append((a, q))

    closures = {}

    def closure(p):
        if p not in closures:
            seen = {p}
            stack = [p]
            while stack:
                x = stack.pop()
                for y in eps.get(x, ()):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            closures[p] = seen
        return closures[p]

    index = {start: 0}
    order = [start]
    out = set()
    accepting = set()
    i = 0
    while i < len(order):
        p = order[i]
        i += 1
        moves = sorted({(a, q) for x in closure(p) for a, q in sym.get(x, ())})
        if final in closure(p):
            accepting.add(index[p])
        for a, q in moves:
            if q not in index:
                index[q] = len(order)
                order.append(q)
            out.add((index[p], a, index[q]))
    return Nfa(len(order), alphabet, out, {0}, accepting)


def compile_regex(text: str) -> Nfa:
    return regex_to_nfa(parse_regex(text))
