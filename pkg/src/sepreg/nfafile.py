"""The ``sepreg-nfa v1`` text format.

Example::

    # sepreg-nfa v1
    alphabet ab
    states 3
    initial 0
    accepting 2
    0 a 1
    1 b 2

One directive per line; ``#`` starts a comment line. ``alphabet``, ``states``
and ``initial`` are mandatory, ``accepting`` may be empty or omitted, and every
other non-comment line is a ``from glyph to`` transition.
"""

from __future__ import annotations

from sepreg.errors import FormatError, SepregError
from sepreg.nfa import GLYPHS, Nfa, make_alphabet

HEADER = "# sepreg-nfa v1"
_DIRECTIVES = ("alphabet", "states", "initial", "accepting")


def write_automaton_file(a: Nfa) -> str:
    lines = [
        HEADER,
        f"alphabet {a.alphabet}".rstrip(),
        f"states {a.state_count}",
        "initial " + " ".join(map(str, sorted(a.initial))),
        ("accepting " + " ".join(map(str, sorted(a.accepting)))).rstrip(),
    ]
    lines += [f"{p} {g} {q}" for p, g, q in sorted(a.transitions)]
    return "\n".join(lines) + "\n"


def _state(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected a state index, got {token!r}", lineno) from None


def parse_automaton_file(text: str) -> Nfa:
    seen = {}
    trans = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *rest = line.split()
        if head in _DIRECTIVES:
            if head in seen:
                raise FormatError(f"duplicate {head!r} directive", lineno)
            if head == "alphabet":
                glyphs = "".join(rest)
                bad = [g for g in glyphs if g not in GLYPHS]
                if bad:
                    raise FormatError(f"invalid symbol {bad[0]!r}", lineno)
                seen[head] = (make_alphabet(glyphs), lineno)
            elif head == "states":
                if len(rest) != 1:
                    raise FormatError("'states' takes exactly one count", lineno)
                n = _state(rest[0], lineno)
                if n < 1:
                    raise FormatError("state count must be positive", lineno)
                seen[head] = (n, lineno)
            else:
                seen[head] = ([_state(t, lineno) for t in rest], lineno)
            continue
        if len(rest) != 2:
            raise FormatError(f"expected 'from glyph to', got {line!r}", lineno)
        trans.append((_state(head, lineno), rest[0], _state(rest[1], lineno), lineno))

    for name in ("alphabet", "states", "initial"):
        if name not in seen:
            raise FormatError(f"missing {name!r} directive", len(text.splitlines()) + 1)
    alphabet, _ = seen["alphabet"]
    n, _ = seen["states"]
    initial, init_line = seen["initial"]
    accepting, acc_line = seen.get("accepting", ([], 0))
    if not initial:
        raise FormatError("at least one initial state is required", init_line)
    for states, lineno in ((initial, init_line), (accepting, acc_line)):
        for s in states:
            if not 0 <= s < n:
                raise FormatError(f"state {s} out of range (states {n})", lineno)
    edges = set()
    for p, g, q, lineno in trans:
        for s in (p, q):
            if not 0 <= s < n:
                raise FormatError(f"state {s} out of range (states {n})", lineno)
        if len(g) != 1 or g not in alphabet:
            raise FormatError(f"symbol {g!r} not in alphabet {alphabet!r}", lineno)
        if (p, g, q) in edges:
            raise FormatError(f"duplicate transition {p} {g} {q}", lineno)
        edges.add((p, g, q))
    try:
        return Nfa(n, alphabet, edges, initial, accepting)
    except SepregError as exc:  # pragma: no cover - all cases validated above
        raise FormatError(str(exc), 0) from exc
