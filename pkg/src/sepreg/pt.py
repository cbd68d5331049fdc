"""Separability by piecewise testable languages.

Two automata A and B are *synchronizable* when a pair of accepting states is
reachable from a pair of initial states in the SYNCH graph, whose vertices are
state pairs and whose edges are one-step synchronizations:

* a symbol edge ``(p, q) -a-> (p', q')`` when both automata read ``a``;
* a cycle edge ``Vp -> Vq`` through a hub ``V`` whose saturated cycle alphabet
  ``S`` is nonempty, when there are ``S``-routes from ``Vp`` to ``V`` and from
  ``V`` to ``Vq``. A route uses words over ``S`` only, chosen independently in
  the two automata.

The languages are separable by a piecewise testable language exactly when the
automata are not synchronizable. Everything here is polynomial in the number of
states and in the alphabet size.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

from sepreg import kernels
from sepreg.errors import NO_DEADLINE
from sepreg.nfa import Nfa, bits, merge_alphabets, reachable_states, restrict, reverse
from sepreg.verdict import Verdict


class PairVertex(NamedTuple):
    state_a: int
    state_b: int

    def __str__(self):
        return f"({self.state_a},{self.state_b})"


@dataclass(frozen=True)
class SynchStep:
    """Edge descriptor: ``kind`` is ``"symbol"`` or ``"cycle"``."""

    kind: str
    symbol: str | None = None
    alphabet: frozenset | None = None
    via: PairVertex | None = None

    def to_json(self):
        if self.kind == "symbol":
            return {"kind": "symbol", "symbol": self.symbol}
        return {"kind": "cycle", "alphabet": "".join(sorted(self.alphabet)), "via": list(self.via)}


@dataclass(frozen=True)
class SynchPath:
    """Non-separability certificate: ``vertices[i] -edges[i]-> vertices[i+1]``."""

    vertices: tuple
    edges: tuple

    def to_json(self):
        return {
            "vertices": [list(v) for v in self.vertices],
            "edges": [e.to_json() for e in self.edges],
        }


class _PairContext:
    """Per-call caches of SCCs, reachability and saturated alphabets (as bitmasks)."""

    def __init__(self, a: Nfa, b: Nfa, alphabet: str):
        self.a, self.b = a, b
        self.sigma = alphabet
        self.full = (1 << len(alphabet)) - 1
        self._csr = {
            ("a", False): a.csr(alphabet),
            ("b", False): b.csr(alphabet),
            ("a", True): reverse(a).csr(alphabet),
            ("b", True): reverse(b).csr(alphabet),
        }
        self._n = {"a": a.state_count, "b": b.state_count}
        self._scc: dict = {}
        self._reach: dict = {}
        self._sat: dict = {}

    def mask_of(self, glyphs) -> int:
        return sum(1 << self.sigma.index(g) for g in set(glyphs))

    def glyphs_of(self, mask: int) -> frozenset:
        return frozenset(self.sigma[i] for i in bits(mask))

    def scc(self, side: str, mask: int):
        key = (side, mask)
        hit = self._scc.get(key)
        if hit is None:
            offsets, syms, dsts = self._csr[(side, False)]
            hit = self._scc[key] = kernels.scc(self._n[side], offsets, syms, dsts, mask)
        return hit

    def reach(self, side: str, mask: int, backward: bool = False) -> list:
        key = (side, mask, backward)
        hit = self._reach.get(key)
        if hit is None:
            offsets, syms, dsts = self._csr[(side, backward)]
            hit = self._reach[key] = kernels.reach_masks(self._n[side], offsets, syms, dsts, mask)
        return hit

    def saturated(self, v: PairVertex) -> int:
        hit = self._sat.get(v)
        if hit is not None:
            return hit
        mask = self.full
        while True:
            comp_a, alpha_a = self.scc("a", mask)
            comp_b, alpha_b = self.scc("b", mask)
            x = alpha_a[comp_a[v.state_a]]
            y = alpha_b[comp_b[v.state_b]]
            if x == y:
                break
            mask = x & y
        self._sat[v] = x
        return x

    def symbol_successors(self, v: PairVertex):
        da, db = self.a.delta, self.b.delta
        for g in self.sigma:
            for p in da.get((v.state_a, g), ()):
                for q in db.get((v.state_b, g), ()):
                    yield g, PairVertex(p, q)

    def route_targets(self, v: PairVertex, mask: int):
        ra = self.reach("a", mask)[v.state_a]
        rb = self.reach("b", mask)[v.state_b]
        return [PairVertex(p, q) for p in bits(ra) for q in bits(rb)]

    def hub_groups(self) -> dict:
        """``{mask: {state_a: mask of state_b}}`` for candidate hubs with nonempty
        saturated alphabet, among pairs of states reachable from the initial ones."""
        ra = self.reach("a", self.full)
        rb = self.reach("b", self.full)
        from_a = 0
        for s in self.a.initial:
            from_a |= ra[s]
        from_b = 0
        for s in self.b.initial:
            from_b |= rb[s]
        comp_a, alpha_a = self.scc("a", self.full)
        comp_b, alpha_b = self.scc("b", self.full)
        xs = [x for x in bits(from_a) if alpha_a[comp_a[x]]]
        ys = [y for y in bits(from_b) if alpha_b[comp_b[y]]]
        groups: dict = {}
        for x in xs:
            for y in ys:
                s = self.saturated(PairVertex(x, y))
                if s:
                    row = groups.setdefault(s, {})
                    row[x] = row.get(x, 0) | (1 << y)
        return groups

    def hubs_from(self, u: PairVertex, groups: dict):
        """Hubs ``V`` with an ``S_V``-route from ``u``, as ``(V, S_V)`` pairs."""
        for s in sorted(groups):
            row = groups[s]
            ra = self.reach("a", s)[u.state_a]
            rb = self.reach("b", s)[u.state_b]
            for x in sorted(row):
                if (ra >> x) & 1:
                    for y in bits(row[x] & rb):
                        yield PairVertex(x, y), s


def _ambient(a: Nfa, b: Nfa, alphabet: str | None) -> str:
    return merge_alphabets(a.alphabet, b.alphabet, alphabet or "")


def saturated_cycle_alphabet(a: Nfa, b: Nfa, v, alphabet: str | None = None) -> frozenset:
    """Largest alphabet ``S`` such that both ``v.state_a`` in A and ``v.state_b`` in B
    lie on a cycle whose labels are exactly ``S``; empty if there is none.

    Iterates: take the SCC of each state under the current alphabet; if their
    internal label sets agree that is the answer, else shrink the alphabet to
    their intersection.
    """
    ctx = _PairContext(a, b, _ambient(a, b, alphabet))
    return ctx.glyphs_of(ctx.saturated(PairVertex(*v)))


@dataclass(frozen=True)
class SigmaRoutes:
    """Route relation for one alphabet; it factorizes into per-automaton reachability."""

    forward_a: tuple
    forward_b: tuple
    backward_a: tuple
    backward_b: tuple

    def related(self, u, v) -> bool:
        """Whether there is a route from ``u`` to ``v``."""
        return bool((self.forward_a[u[0]] >> v[0]) & 1 and (self.forward_b[u[1]] >> v[1]) & 1)

    def forward(self, u) -> list:
        return [PairVertex(p, q) for p in bits(self.forward_a[u[0]]) for q in bits(self.forward_b[u[1]])]

    def backward(self, v) -> list:
        return [PairVertex(p, q) for p in bits(self.backward_a[v[0]]) for q in bits(self.backward_b[v[1]])]


def sigma_routes(a: Nfa, b: Nfa, sigma0, alphabet: str | None = None) -> SigmaRoutes:
    ctx = _PairContext(a, b, merge_alphabets(_ambient(a, b, alphabet), "".join(sigma0)))
    mask = ctx.mask_of(sigma0)
    return SigmaRoutes(
        tuple(ctx.reach("a", mask)),
        tuple(ctx.reach("b", mask)),
        tuple(ctx.reach("a", mask, backward=True)),
        tuple(ctx.reach("b", mask, backward=True)),
    )


@dataclass
class SynchGraph:
    """The part of the SYNCH graph reachable from the initial pairs."""

    vertices: tuple
    symbol_edges: frozenset
    cycle_edges: frozenset
    saturated_alphabet: dict
    initial: tuple
    accepting: tuple
    stats: dict = field(default_factory=dict)

    def successors(self) -> dict:
        succ = {v: set() for v in self.vertices}
        for u, _, v in self.symbol_edges:
            succ[u].add(v)
        for u, v, _, _ in self.cycle_edges:
            succ[u].add(v)
        return succ

    def accepting_reachable(self) -> bool:
        # every materialized vertex is reachable from an initial pair
        return bool(self.accepting)


def build_synch_graph(a: Nfa, b: Nfa, alphabet: str | None = None, deadline=NO_DEADLINE) -> SynchGraph:
    """Materialize the SYNCH graph from the initial pairs, with all edges."""
    ctx = _PairContext(a, b, _ambient(a, b, alphabet))
    groups = ctx.hub_groups()
    start = sorted(PairVertex(p, q) for p in a.initial for q in b.initial)
    seen = set(start)
    queue = deque(start)
    symbol_edges = set()
    cycle_edges = set()

    def visit(v):
        if v not in seen:
            seen.add(v)
            queue.append(v)

    while queue:
        deadline.check()
        u = queue.popleft()
        for g, v in ctx.symbol_successors(u):
            symbol_edges.add((u, g, v))
            visit(v)
        for hub, s in ctx.hubs_from(u, groups):
            s_glyphs = ctx.glyphs_of(s)
            for v in ctx.route_targets(hub, s):
                cycle_edges.add((u, v, s_glyphs, hub))
                visit(v)
    vertices = tuple(sorted(seen))
    accepting = tuple(v for v in vertices if v.state_a in a.accepting and v.state_b in b.accepting)
    return SynchGraph(
        vertices=vertices,
        symbol_edges=frozenset(symbol_edges),
        cycle_edges=frozenset(cycle_edges),
        saturated_alphabet={v: ctx.glyphs_of(ctx.saturated(v)) for v in vertices},
        initial=tuple(start),
        accepting=accepting,
    )


def find_synch_path(a: Nfa, b: Nfa, alphabet: str | None = None, deadline=NO_DEADLINE):
    """Breadth-first search for an accepting pair; returns ``(path or None, explored)``.

    Each hub is expanded at most once: its route targets are the same whichever
    vertex reached it first.
    """
    ctx = _PairContext(a, b, _ambient(a, b, alphabet))
    groups = ctx.hub_groups()
    start = sorted(PairVertex(p, q) for p in a.initial for q in b.initial)
    parent = {v: None for v in start}
    queue = deque(start)

    def path_to(v):
        vertices, edges = [v], []
        while parent[v] is not None:
            v, step = parent[v]
            vertices.append(v)
            edges.append(step)
        return SynchPath(tuple(reversed(vertices)), tuple(reversed(edges)))

    while queue:
        deadline.check()
        u = queue.popleft()
        if u.state_a in a.accepting and u.state_b in b.accepting:
            return path_to(u), len(parent)
        for g, v in ctx.symbol_successors(u):
            if v not in parent:
                parent[v] = (u, SynchStep("symbol", symbol=g))
                queue.append(v)
        for hub, s in list(ctx.hubs_from(u, groups)):
            row = groups[s]
            row[hub.state_a] &= ~(1 << hub.state_b)
            step = SynchStep("cycle", alphabet=ctx.glyphs_of(s), via=hub)
            for v in ctx.route_targets(hub, s):
                if v not in parent:
                    parent[v] = (u, step)
                    queue.append(v)
    return None, len(parent)


def decide_pt(a: Nfa, b: Nfa, alphabet: str | None = None, deadline=NO_DEADLINE) -> Verdict:
    """Separable by a piecewise testable language iff not synchronizable.

    Symmetric in its arguments. A non-separable verdict carries a ``SynchPath``.
    """
    t0 = time.perf_counter()
    path, explored = find_synch_path(a, b, alphabet, deadline)
    stats = {"elapsed_ms": (time.perf_counter() - t0) * 1000.0, "vertices": explored}
    if path is None:
        return Verdict("pt", True, stats=stats)
    return Verdict("pt", False, certificate=path, stats=stats)


def validate_synch_path(a: Nfa, b: Nfa, path: SynchPath, alphabet: str | None = None) -> bool:
    """Re-check a certificate edge by edge against the definitions."""
    vs = path.vertices
    if not vs or len(path.edges) != len(vs) - 1:
        return False
    if vs[0].state_a not in a.initial or vs[0].state_b not in b.initial:
        return False
    if vs[-1].state_a not in a.accepting or vs[-1].state_b not in b.accepting:
        return False
    for u, step, v in zip(vs, path.edges, vs[1:]):
        if step.kind == "symbol":
            g = step.symbol
            if (u.state_a, g, v.state_a) not in a.transitions or (u.state_b, g, v.state_b) not in b.transitions:
                return False
        elif step.kind == "cycle":
            s = step.alphabet
            if not s or saturated_cycle_alphabet(a, b, step.via, alphabet) != s:
                return False
            ra, rb = restrict(a, s), restrict(b, s)
            hub = step.via
            if hub.state_a not in reachable_states(ra, {u.state_a}):
                return False
            if hub.state_b not in reachable_states(rb, {u.state_b}):
                return False
            if v.state_a not in reachable_states(ra, {hub.state_a}):
                return False
            if v.state_b not in reachable_states(rb, {hub.state_b}):
                return False
        else:
            return False
    return True


def _node(v):
    return f'"{v.state_a},{v.state_b}"'


def synch_to_dot(g: SynchGraph, a: Nfa, b: Nfa) -> str:
    """Graphviz rendering; initial pairs are bold boxes, accepting pairs double circles."""
    initial = set(g.initial)
    accepting = set(g.accepting)
    lines = ["digraph synch {", "  rankdir=LR;", "  node [shape=circle];"]
    for v in g.vertices:
        attrs = [f'label="({v.state_a},{v.state_b})"']
        if v in accepting:
            attrs.append("shape=doublecircle")
        if v in initial:
            attrs.append("style=bold")
            attrs.append("color=blue")
        lines.append(f"  {_node(v)} [{', '.join(attrs)}];")
    for u, sym, v in sorted(g.symbol_edges):
        lines.append(f'  {_node(u)} -> {_node(v)} [label="{sym}"];')
    # one dashed edge per (u, v, Σ0); further hubs giving the same step are only counted
    hubs = {}
    for u, v, s, hub in g.cycle_edges:
        hubs.setdefault((u, v, tuple(sorted(s))), []).append(hub)
    for (u, v, s), via in sorted(hubs.items()):
        first = min(via)
        label = "Σ0={" + ",".join(s) + f"}} via ({first.state_a},{first.state_b})"
        if len(via) > 1:
            label += f" +{len(via) - 1}"
        lines.append(f'  {_node(u)} -> {_node(v)} [label="{label}", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
