"""Command-line interface: ``sepreg decide|oracle|zigzag|layers|synch``.

Exit codes: 0 verdict produced (separable or not), 2 usage error, 3 regex or
automaton-file error, 4 cap or timeout hit (inconclusive).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from sepreg.errors import (
    Deadline,
    LimitExceeded,
    OverlappingInputs,
    ParseError,
    RegexSyntaxError,
    SepregError,
)
from sepreg.nfa import GLYPHS, enumerate_words, is_infinite, make_alphabet, merge_alphabets, trim
from sepreg.nfafile import parse_automaton_file
from sepreg.oracles import (
    Conclusive,
    Inconclusive,
    bounded_zigzag_search,
    layer_separation_finite,
    pt_oracle,
    verify_layer_separation,
)
from sepreg.pt import build_synch_graph, decide_pt, synch_to_dot
from sepreg.regex import compile_regex
from sepreg.subseq import decide_subseq_single, decide_subseq_union
from sepreg.suffix import decide_prefix, decide_suffix
from sepreg.verdict import FAMILIES, Verdict, to_jsonable

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_LIMIT = 4

DEFAULT_CAPS = {
    "max_level": 4,
    "max_len": 8,
    "max_word_len": 24,
    "det_cap": 4096,
    "profile_cap": 200_000,
    "word_cap": 4000,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_caps(environ=None) -> dict:
    """Built-in caps, overridden by ``SEPREG_DEFAULT_CAPS`` (``key=value,...``)."""
    caps = dict(DEFAULT_CAPS)
    raw = (os.environ if environ is None else environ).get("SEPREG_DEFAULT_CAPS", "")
    for item in filter(None, (part.strip() for part in raw.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in caps:
            raise UsageError(f"SEPREG_DEFAULT_CAPS: unknown entry {item!r}")
        try:
            caps[key] = int(value)
        except ValueError:
            raise UsageError(f"SEPREG_DEFAULT_CAPS: {key} needs an integer") from None
        if caps[key] < 1:
            raise UsageError(f"SEPREG_DEFAULT_CAPS: {key} must be positive")
    return caps


def load_source(spec: str):
    """``re:<regex>`` or ``file:<path>`` (sepreg-nfa v1 format)."""
    if spec.startswith("re:"):
        return compile_regex(spec[3:])
    if spec.startswith("file:"):
        path = spec[5:]
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        return parse_automaton_file(text)
    raise UsageError(f"input {spec!r} must start with 're:' or 'file:'")


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _alphabet(text):
    bad = [c for c in text if c not in GLYPHS]
    if bad:
        raise argparse.ArgumentTypeError(f"invalid symbol {bad[0]!r}")
    return make_alphabet(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sepreg", description="Decide separability of regular languages.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p):
        p.add_argument("--K", dest="k", required=True, help="re:<regex> or file:<path>")
        p.add_argument("--L", dest="l", required=True, help="re:<regex> or file:<path>")
        p.add_argument("--alphabet", type=_alphabet, help="extra symbols for the ambient alphabet")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--timeout-ms", type=_positive)

    p = sub.add_parser("decide", help="run one family decider")
    common(p)
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--witness", action="store_true", help="include the separator, when available")
    p.add_argument("--depth-cap", type=_positive, help="subseq-single search depth")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("oracle", help="Simon-level piecewise testable oracle")
    common(p)
    p.add_argument("--max-level", type=_positive)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("zigzag", help="bounded zigzag search")
    common(p)
    p.add_argument("--max-len", type=_positive)
    p.add_argument("--max-word-len", type=_positive)
    p.set_defaults(func=cmd_zigzag)

    p = sub.add_parser("layers", help="layer separation of finite languages")
    common(p)
    p.set_defaults(func=cmd_layers)

    p = sub.add_parser("synch", help="build the synchronization graph")
    common(p)
    p.add_argument("--dot", help="write the graph in DOT format to this path ('-' for stdout)")
    p.set_defaults(func=cmd_synch)
    return parser


class _Run:
    """Per-invocation state shared by the command handlers."""

    def __init__(self, args, caps):
        self.args = args
        self.caps = caps
        self.deadline = Deadline(args.timeout_ms)
        self.t0 = time.perf_counter()
        self.k = load_source(args.k)
        self.l = load_source(args.l)
        self.alphabet = merge_alphabets(self.k.alphabet, self.l.alphabet, args.alphabet or "")

    def stats(self, extra=None, caps_hit=None):
        out = {
            "elapsed_ms": round((time.perf_counter() - self.t0) * 1000.0, 3),
            "vertices": None,
            "caps_hit": list(caps_hit or []),
        }
        for key, value in (extra or {}).items():
            if key == "elapsed_ms":
                continue
            if key == "caps_hit":
                out["caps_hit"] = list(value)
            else:
                out[key] = value
        return out

    def emit(self, report: dict, text_lines):
        if self.args.json:
            print(json.dumps(to_jsonable(report), ensure_ascii=False, sort_keys=False))
        else:
            for line in text_lines:
                print(line)


def _run_family(run: _Run) -> Verdict:
    family = run.args.family
    k, l, alphabet, deadline = run.k, run.l, run.alphabet, run.deadline
    if family == "pt":
        return decide_pt(k, l, alphabet, deadline)
    if family == "subseq-single":
        return decide_subseq_single(k, l, run.args.depth_cap, alphabet,
                                    det_cap=run.caps["det_cap"], deadline=deadline)
    if family == "subseq-union":
        return decide_subseq_union(k, l, alphabet, deadline=deadline)
    order, kind = family.split("-")
    kwargs = {"alphabet": alphabet, "deadline": deadline}
    if kind == "single":
        kwargs["det_cap"] = run.caps["det_cap"]
    if order == "suffix":
        return decide_suffix(kind, k, l, **kwargs)
    return decide_prefix(kind, k, l, **kwargs)


def _describe(value) -> str:
    return json.dumps(to_jsonable(value), ensure_ascii=False)


def cmd_decide(run: _Run) -> int:
    args = run.args
    try:
        verdict = _run_family(run)
    except LimitExceeded as exc:
        verdict = Verdict(args.family, None, note=str(exc))
        verdict.stats["caps_hit"] = [_limit_name(exc)]
    report = {
        "family": verdict.family,
        "separable": verdict.separable,
        "witness": verdict.witness if args.witness else None,
        "certificate": verdict.certificate,
        "stats": run.stats(verdict.stats),
    }
    if verdict.note:
        report["note"] = verdict.note
    answer = {True: "separable", False: "not separable", None: "inconclusive"}[verdict.separable]
    lines = [f"{verdict.family}: {answer}"]
    if args.witness and verdict.witness is not None:
        lines.append(f"witness: {_describe(verdict.witness)}")
    if verdict.certificate is not None:
        lines.append(f"certificate: {_describe(verdict.certificate)}")
    if verdict.note:
        lines.append(f"note: {verdict.note}")
    lines.append(f"elapsed: {report['stats']['elapsed_ms']:.1f} ms")
    run.emit(report, lines)
    return EXIT_LIMIT if verdict.inconclusive else EXIT_OK


def _limit_name(exc) -> str:
    return getattr(exc, "what", None) or "timeout"


def cmd_oracle(run: _Run) -> int:
    level = run.args.max_level or run.caps["max_level"]
    result = pt_oracle(run.k, run.l, level, run.alphabet, run.caps["profile_cap"], run.deadline)
    caps_hit = ["profile pairs"] if isinstance(result, Inconclusive) else []
    separable = result.separable if isinstance(result, Conclusive) else None
    report = {"command": "oracle", "separable": separable, "result": result,
              "stats": run.stats(caps_hit=caps_hit)}
    if isinstance(result, Conclusive):
        line = f"separable at level {result.level}"
    elif isinstance(result, Inconclusive):
        line = f"inconclusive at level {result.level}: {result.reason}"
    else:
        line = f"equal-profile pairs exist at every level up to {result.level} (not a proof)"
    run.emit(report, [line])
    return EXIT_LIMIT if isinstance(result, Inconclusive) else EXIT_OK


def cmd_zigzag(run: _Run) -> int:
    max_len = run.args.max_len or run.caps["max_len"]
    max_word_len = run.args.max_word_len or run.caps["max_word_len"]
    try:
        cert = bounded_zigzag_search(run.k, run.l, max_len, max_word_len,
                                     run.caps["word_cap"], run.deadline)
    except LimitExceeded as exc:
        report = {"command": "zigzag", "certificate": None, "length": None,
                  "stats": run.stats(caps_hit=[_limit_name(exc)])}
        run.emit(report, [f"inconclusive: {exc}"])
        return EXIT_LIMIT
    report = {"command": "zigzag", "certificate": cert, "length": 0 if cert is None else len(cert),
              "stats": run.stats()}
    if cert is None:
        lines = ["no word of K or L within the length bound"]
    else:
        lines = [f"zigzag of length {len(cert)}:"]
        lines += [f"  {t} {w or '@'}" for w, t in zip(cert.words, cert.tags)]
    run.emit(report, lines)
    return EXIT_OK


def _finite_words(a, name):
    if is_infinite(a):
        raise UsageError(f"{name} must be a finite language")
    t = trim(a)
    return enumerate_words(t, t.state_count)


def cmd_layers(run: _Run) -> int:
    kw = _finite_words(run.k, "K")
    lw = _finite_words(run.l, "L")
    try:
        layers = layer_separation_finite(kw, lw)
    except OverlappingInputs as exc:
        raise UsageError(f"K and L share the word {exc.word!r}") from None
    try:
        verified = verify_layer_separation(run.k, run.l, layers, run.alphabet)
    except LimitExceeded as exc:
        report = {"command": "layers", "layers": layers, "verified": None,
                  "stats": run.stats(caps_hit=[_limit_name(exc)])}
        run.emit(report, [f"inconclusive: {exc}"])
        return EXIT_LIMIT
    report = {"command": "layers", "layers": layers, "verified": verified, "stats": run.stats()}
    lines = [f"{len(layers)} layers (verified: {'yes' if verified else 'no'})"]
    for i, layer in enumerate(layers, start=1):
        words = " ".join(w or "@" for w in layer.words)
        lines.append(f"  S{i} [{layer.side}]: {words}")
    run.emit(report, lines)
    return EXIT_OK


def cmd_synch(run: _Run) -> int:
    g = build_synch_graph(run.k, run.l, run.alphabet, run.deadline)
    dot = synch_to_dot(g, run.k, run.l)
    target = run.args.dot
    if target and target != "-":
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(dot)
    report = {
        "command": "synch",
        "separable": not g.accepting_reachable(),
        "vertices": len(g.vertices),
        "symbol_edges": len(g.symbol_edges),
        "cycle_edges": len(g.cycle_edges),
        "accepting": [list(v) for v in g.accepting],
        "dot": target,
        "stats": run.stats({"vertices": len(g.vertices)}),
    }
    lines = [
        f"{len(g.vertices)} vertices, {len(g.symbol_edges)} symbol edges, {len(g.cycle_edges)} cycle edges",
        f"accepting pair reachable: {'yes' if g.accepting_reachable() else 'no'}",
    ]
    if target == "-" and not run.args.json:
        lines = [dot.rstrip("\n")]
    elif target:
        lines.append(f"wrote {target}")
    run.emit(report, lines)
    return EXIT_OK


def _error(as_json: bool, code: str, message: str, status: int) -> int:
    if as_json:
        print(json.dumps({"error": {"code": code, "message": message}}))
    else:
        print(f"sepreg: {code}: {message}", file=sys.stderr)
    return status


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required (decide, oracle, zigzag, layers, synch)")
        caps = default_caps()
        run = _Run(args, caps)
        return args.func(run)
    except UsageError as exc:
        return _error(as_json, "usage", str(exc), EXIT_USAGE)
    except RegexSyntaxError as exc:
        return _error(as_json, "regex", str(exc), EXIT_PARSE)
    except ParseError as exc:
        return _error(as_json, "format", str(exc), EXIT_PARSE)
    except LimitExceeded as exc:
        return _error(as_json, "limit", str(exc), EXIT_LIMIT)
    except SepregError as exc:
        return _error(as_json, "usage", str(exc), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
