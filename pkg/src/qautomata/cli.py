"""Command-line front end: ``qa <command> AUTOMATON [AUTOMATON] --val F ...``.

Exit codes: 0 the property holds (or a value was computed), 1 it fails,
2 usage or input error, 3 the combination is unsupported, undecidable or the
refutation search was inconclusive.
"""

from __future__ import annotations

import argparse
import sys

from . import decisions, oracle
from .core import (LassoWord, QuantError, UndecidableError, UnimplementedProblemError, UnsupportedValueFunctionError,
                   ValueFunction, format_weight, load_automaton, serialize_automaton)
from .graph import eval_lasso, top_value
from .monitor import AVERAGE, BOUNDS, UnsupportedModeError, create_monitor
from .safety import decompose, liveness_component, safety_closure

OK, FAILS, USAGE, UNSUPPORTED = 0, 1, 2, 3

_TWO_OPERANDS = {"include", "equivalent"}
_NEEDS_THRESHOLD = {"empty", "universal"}
_COMMANDS = {
    "top": "top value",
    "bottom": "bottom value",
    "empty": "is every word valued below the threshold?",
    "universal": "is every word valued at least the threshold?",
    "include": "is A(w) <= B(w) for all words?",
    "equivalent": "is A(w) = B(w) for all words?",
    "constant": "is the automaton a constant function?",
    "safe": "is the automaton a safety property?",
    "live": "is the automaton a liveness property?",
    "closure": "print the safety closure (an Inf automaton)",
    "liveness-component": "print the liveness component",
    "decompose": "print the safety and liveness parts",
    "eval": "value of one lasso word (--stem, --period)",
    "monitor": "read letters from stdin, one report per letter",
}


def build_parser():
    parser = argparse.ArgumentParser(prog="qa", description="Analysis of quantitative automata.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND",
                                title="commands")
    for name, text in _COMMANDS.items():
        _add_common(sub.add_parser(name, help=text, description=text), name)
    # brute-force reference values, for debugging; deliberately unlisted
    _add_common(sub.add_parser("oracle"), "oracle")
    sub._choices_actions = [a for a in sub._choices_actions if a.dest != "oracle"]
    return parser


def _add_common(p, name):
    p.add_argument("automaton")
    if name in _TWO_OPERANDS:
        p.add_argument("other")
    p.add_argument("--val", required=True, type=_value_function, metavar="F",
                   help="Inf, Sup, LimInf, LimSup, LimInfAvg or LimSupAvg")
    p.add_argument("--threshold", type=decisions.threshold)
    p.add_argument("--witness", action="store_true", help="print a witness lasso when there is one")
    p.add_argument("--refute-only", action="store_true",
                   help="search for a counterexample where no complete procedure exists")
    p.add_argument("--stem-bound", type=_nonneg, default=4)
    p.add_argument("--period-bound", type=_positive, default=4)
    p.add_argument("--output", help="write constructed automata here (decompose: file prefix)")
    p.add_argument("--mode", choices=(BOUNDS, AVERAGE), default=BOUNDS)
    p.add_argument("--stem", default="", help="space-separated stem letters (eval)")
    p.add_argument("--period", default=None, help="space-separated period letters (eval)")


def _value_function(text):
    try:
        return ValueFunction.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _print_witness(w, out):
    print(f"stem: {' '.join(w.stem)}".rstrip(), file=out)
    print(f"period: {' '.join(w.period)}", file=out)


def _boolean(verdict, args, out, negate=False):
    if verdict.holds is None:
        print("UNKNOWN", file=out)
        return UNSUPPORTED
    holds = verdict.holds != negate
    print("YES" if holds else "NO", file=out)
    if args.witness and verdict.witness is not None:
        _print_witness(verdict.witness, out)
    return OK if holds else FAILS


def _emit(A, args, out, path=None):
    text = serialize_automaton(A)
    path = path or args.output
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def _dispatch(args, stdin, out):
    cmd, f = args.command, args.val
    if (args.threshold is not None) != (cmd in _NEEDS_THRESHOLD):
        need = "requires" if cmd in _NEEDS_THRESHOLD else "does not take"
        raise _Usage(f"'{cmd}' {need} --threshold")
    A = load_automaton(args.automaton)
    bounds = dict(stem_bound=args.stem_bound, period_bound=args.period_bound)

    if cmd == "top":
        value, w = top_value(A, f)
        print(format_weight(value), file=out)
        if args.witness:
            _print_witness(w, out)
        return OK
    if cmd == "bottom":
        v = decisions.bottom_value(A, f)
        print(format_weight(v.value), file=out)
        if args.witness:
            _print_witness(v.witness, out)
        return OK
    if cmd == "empty":
        return _boolean(decisions.is_non_empty(A, f, args.threshold), args, out, negate=True)
    if cmd == "universal":
        return _boolean(decisions.is_universal(A, f, args.threshold), args, out)
    if cmd in _TWO_OPERANDS:
        B = load_automaton(args.other)
        if cmd == "include":
            v = decisions.is_included(A, B, f, refute_only=args.refute_only, **bounds)
        else:
            v = decisions.are_equivalent(A, B, f, refute_only=args.refute_only, **bounds)
        return _boolean(v, args, out)
    if cmd == "constant":
        return _boolean(decisions.is_constant(A, f, refute_only=args.refute_only, **bounds), args, out)
    if cmd == "safe":
        return _boolean(decisions.is_safe(A, f, refute_only=args.refute_only, **bounds), args, out)
    if cmd == "live":
        return _boolean(decisions.is_live(A, f), args, out)
    if cmd == "closure":
        _emit(safety_closure(A, f), args, out)
        return OK
    if cmd == "liveness-component":
        _emit(liveness_component(A, f), args, out)
        return OK
    if cmd == "decompose":
        d = decompose(A, f)
        if args.output:
            _emit(d.safety_part, args, out, f"{args.output}.safety.txt")
            _emit(d.liveness_part, args, out, f"{args.output}.liveness.txt")
        else:
            print("# safety part (Inf)", file=out)
            _emit(d.safety_part, args, out)
            print(f"# liveness part ({f})", file=out)
            _emit(d.liveness_part, args, out)
        return OK
    if cmd == "eval":
        if not args.period:
            raise _Usage("'eval' requires a nonempty --period")
        w = LassoWord.of(args.stem, args.period)
        print(format_weight(eval_lasso(A, f, w)), file=out)
        return OK
    if cmd == "monitor":
        m = create_monitor(A, f, args.mode)
        for line in stdin:
            letter = line.strip()
            if letter:
                print(m.step(letter), file=out)
                out.flush()
        return OK
    if cmd == "oracle":
        value, w = oracle.brute_force_top(A, f, args.stem_bound, args.period_bound)
        low, lw = oracle.brute_force_bottom(A, f, args.stem_bound, args.period_bound)
        print(f"top {format_weight(value)} at {w}", file=out)
        print(f"bottom {format_weight(low)} at {lw}", file=out)
        return OK
    raise _Usage(f"unknown command {cmd!r}")


class _Usage(Exception):
    pass


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    out = sys.stdout if stdout is None else stdout
    err = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return _dispatch(args, stdin, out)
    except (UndecidableError, UnimplementedProblemError, UnsupportedValueFunctionError, UnsupportedModeError) as e:
        print(f"qa: unsupported: {e}", file=err)
        return UNSUPPORTED
    except (QuantError, _Usage, ValueError, OSError) as e:
        print(f"qa: error: {e}", file=err)
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
