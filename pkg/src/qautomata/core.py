"""Automaton model, value functions, lasso words and the transition text format.

A file holds one transition per line::

    hi : 6, q0 -> q1     # letter : weight, source -> target

The initial state is the source of the first transition.  Weights are
integers or ``p/q`` rationals; ``#`` starts a comment.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Union

POS_INF = float("inf")
NEG_INF = float("-inf")

Weight = Union[Fraction, float]  # float only for the two sentinels


class QuantError(Exception):
    """Base class of all errors raised by this package."""


class ParseError(QuantError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyInputError(ParseError):
    pass


class TotalityError(QuantError):
    def __init__(self, state, letter):
        self.state = state
        self.letter = letter
        super().__init__(f"state {state!r} has no transition on letter {letter!r}")


class UnknownStateError(QuantError):
    pass


class UnknownLetterError(QuantError):
    pass


class AlphabetMismatchError(QuantError):
    pass


class NotDeterministicError(QuantError):
    pass


class UnsupportedValueFunctionError(QuantError):
    pass


class UndecidableError(QuantError):
    """The requested (problem, value function) combination is undecidable."""


class UnimplementedProblemError(QuantError):
    """Decidable in principle, but no complete procedure is provided here."""


def as_weight(value) -> Fraction:
    if isinstance(value, float):
        raise ValueError("transition weights must be exact rationals")
    return Fraction(value)


def format_weight(w: Weight) -> str:
    if w == POS_INF:
        return "inf"
    if w == NEG_INF:
        return "-inf"
    w = Fraction(w)
    if w.denominator == 1:
        return str(w.numerator)
    return f"{w.numerator}/{w.denominator}"


class ValueFunction(enum.Enum):
    Inf = "Inf"
    Sup = "Sup"
    LimInf = "LimInf"
    LimSup = "LimSup"
    LimInfAvg = "LimInfAvg"
    LimSupAvg = "LimSupAvg"

    @property
    def basic(self) -> bool:
        return self in _BASIC

    @property
    def limit_average(self) -> bool:
        return self in (ValueFunction.LimInfAvg, ValueFunction.LimSupAvg)

    @property
    def prefix_independent(self) -> bool:
        return self not in (ValueFunction.Inf, ValueFunction.Sup)

    @property
    def dual(self) -> "ValueFunction":
        """Value function g with f(x) = -g(-x)."""
        return _DUAL[self]

    @classmethod
    def parse(cls, name: str) -> "ValueFunction":
        try:
            return cls(name)
        except ValueError:
            names = ", ".join(v.value for v in cls)
            raise ValueError(f"unknown value function {name!r} (expected one of {names})") from None

    def __str__(self):
        return self.value


_BASIC = frozenset({ValueFunction.Inf, ValueFunction.Sup, ValueFunction.LimInf, ValueFunction.LimSup})
_DUAL = {
    ValueFunction.Inf: ValueFunction.Sup,
    ValueFunction.Sup: ValueFunction.Inf,
    ValueFunction.LimInf: ValueFunction.LimSup,
    ValueFunction.LimSup: ValueFunction.LimInf,
    ValueFunction.LimInfAvg: ValueFunction.LimSupAvg,
    ValueFunction.LimSupAvg: ValueFunction.LimInfAvg,
}


class Transition(NamedTuple):
    source: str
    letter: str
    weight: Fraction
    target: str


@dataclass(frozen=True)
class LassoWord:
    """The ultimately periodic word ``stem . period^omega``."""

    stem: tuple
    period: tuple

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("the period of a lasso word must be nonempty")

    @classmethod
    def of(cls, stem: str, period: str) -> "LassoWord":
        """Build from whitespace-separated letter strings, e.g. ``of("lo", "hi lo")``."""
        return cls(tuple(stem.split()), tuple(period.split()))

    def letters(self):
        return set(self.stem) | set(self.period)

    def prefix(self, n: int) -> tuple:
        """First n letters of the infinite word."""
        out = list(self.stem[:n])
        while len(out) < n:
            out.extend(self.period[: n - len(out)])
        return tuple(out)

    def __str__(self):
        return f"{' '.join(self.stem)} ({' '.join(self.period)})^w".lstrip()


@dataclass
class Verdict:
    """Outcome of a decision procedure or value computation.

    ``holds`` is None for value results and for inconclusive refutation runs.
    """

    kind: str  # "boolean" or "value"
    holds: Optional[bool] = None
    value: Optional[Weight] = None
    witness: Optional[LassoWord] = None
    note: str = ""

    @classmethod
    def boolean(cls, holds, witness=None, note=""):
        return cls("boolean", holds=holds, witness=witness, note=note)

    @classmethod
    def numeric(cls, value, witness=None, note=""):
        return cls("value", value=value, witness=witness, note=note)

    def __bool__(self):
        if self.kind != "boolean" or self.holds is None:
            raise ValueError("verdict has no definite truth value")
        return self.holds


class Automaton:
    """A total, nondeterministic quantitative automaton.

    States and letters are string tokens.  Their declaration order (initial
    state first, then first appearance as a transition source; letters by
    first appearance) fixes every tie-break in the analysis algorithms.
    Instances are treated as immutable.
    """

    def __init__(self, transitions: Iterable, initial: Optional[str] = None,
                 alphabet: Optional[Iterable[str]] = None, states: Optional[Iterable[str]] = None):
        ts = []
        seen = set()
        for t in transitions:
            t = Transition(str(t[0]), str(t[1]), as_weight(t[2]), str(t[3]))
            if t not in seen:
                seen.add(t)
                ts.append(t)
        if not ts:
            raise EmptyInputError("an automaton needs at least one transition")
        if initial is None:
            initial = ts[0].source

        if alphabet is None:
            alphabet = list(dict.fromkeys(t.letter for t in ts))
        if states is None:
            states = list(dict.fromkeys([initial] + [t.source for t in ts] + [t.target for t in ts]))
        self.alphabet = tuple(alphabet)
        self.states = tuple(states)
        self.initial = initial
        self._state_index = {q: i for i, q in enumerate(self.states)}
        self._letter_index = {a: i for i, a in enumerate(self.alphabet)}
        if len(self._state_index) != len(self.states) or len(self._letter_index) != len(self.alphabet):
            raise ValueError("duplicate state or letter declaration")
        if not self.alphabet:
            raise ValueError("empty alphabet")
        if initial not in self._state_index:
            raise UnknownStateError(f"initial state {initial!r} is not declared")

        delta = {}
        for t in ts:
            if t.source not in self._state_index:
                raise UnknownStateError(f"undeclared state {t.source!r}")
            if t.target not in self._state_index:
                raise UnknownStateError(f"undeclared state {t.target!r}")
            if t.letter not in self._letter_index:
                raise UnknownLetterError(f"undeclared letter {t.letter!r}")
            delta.setdefault((t.source, t.letter), []).append((t.weight, t.target))
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in delta:
                    raise TotalityError(q, a)
        si = self._state_index
        self._delta = {k: tuple(sorted(v, key=lambda wt: (si[wt[1]], wt[0]))) for k, v in delta.items()}
        li = self._letter_index
        self.transitions = tuple(sorted(ts, key=lambda t: (si[t.source], li[t.letter], si[t.target], t.weight)))

    def successors(self, state: str, letter: str) -> tuple:
        """The (weight, target) pairs of delta(state, letter)."""
        try:
            return self._delta[(state, letter)]
        except KeyError:
            if state not in self._state_index:
                raise UnknownStateError(state) from None
            raise UnknownLetterError(letter) from None

    def state_index(self, state: str) -> int:
        try:
            return self._state_index[state]
        except KeyError:
            raise UnknownStateError(state) from None

    def letter_index(self, letter: str) -> int:
        try:
            return self._letter_index[letter]
        except KeyError:
            raise UnknownLetterError(letter) from None

    def is_deterministic(self) -> bool:
        return all(len(v) == 1 for v in self._delta.values())

    def weights(self) -> tuple:
        return tuple(sorted({t.weight for t in self.transitions}))

    def weight_profile(self):
        """(min, max, sorted distinct weights)."""
        ws = self.weights()
        return ws[0], ws[-1], ws

    def map_weights(self, fn) -> "Automaton":
        return Automaton(((t.source, t.letter, fn(t), t.target) for t in self.transitions),
                         initial=self.initial, alphabet=self.alphabet, states=self.states)

    def negated(self) -> "Automaton":
        return self.map_weights(lambda t: -t.weight)

    def check_word(self, letters: Iterable[str]):
        for a in letters:
            if a not in self._letter_index:
                raise UnknownLetterError(f"letter {a!r} is not in the alphabet")

    def __eq__(self, other):
        if not isinstance(other, Automaton):
            return NotImplemented
        return (self.initial == other.initial and set(self.alphabet) == set(other.alphabet)
                and set(self.states) == set(other.states) and set(self.transitions) == set(other.transitions))

    def __hash__(self):
        return hash((self.initial, frozenset(self.transitions)))

    def __repr__(self):
        return (f"<Automaton |Q|={len(self.states)} |Sigma|={len(self.alphabet)} "
                f"|delta|={len(self.transitions)} initial={self.initial!r}>")

    def __str__(self):
        return serialize_automaton(self)


_TOKEN = r"[A-Za-z0-9_]+"
_WEIGHT = r"[+-]?\d+(?:/\d+)?"
_LINE = re.compile(rf"^\s*({_TOKEN})\s*:\s*({_WEIGHT})\s*,\s*({_TOKEN})\s*->\s*({_TOKEN})\s*$")


def parse_automaton(text: str) -> Automaton:
    """Parse the ``a : v, q -> p`` format and validate the result."""
    if not text or not text.strip():
        raise EmptyInputError("empty automaton description")
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE.match(line)
        if m is None:
            raise ParseError(f"expected 'letter : weight, source -> target', got {raw.strip()!r}", lineno)
        letter, weight, src, dst = m.groups()
        try:
            weight = Fraction(weight)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in weight {m.group(2)!r}", lineno) from None
        transitions.append((letter, weight, src, dst))
    if not transitions:
        raise EmptyInputError("no transitions in automaton description")
    initial = transitions[0][2]
    sources = list(dict.fromkeys([initial] + [t[2] for t in transitions]))
    targets = [t[3] for t in transitions if t[3] not in set(sources)]
    states = sources + list(dict.fromkeys(targets))
    return Automaton(((s, a, w, d) for a, w, s, d in transitions), initial=initial, states=states)


def load_automaton(path) -> Automaton:
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read())


def serialize_automaton(A: Automaton) -> str:
    """One line per transition, grouped by source in declaration order."""
    lines = [f"{t.letter} : {format_weight(t.weight)}, {t.source} -> {t.target}" for t in A.transitions]
    return "\n".join(lines) + "\n"


def fresh_name(base: str, taken: set) -> str:
    """A state token derived from base that is not in taken (and records it)."""
    base = re.sub(r"[^A-Za-z0-9_]", "_", base) or "s"
    name, k = base, 1
    while name in taken:
        name = f"{base}_{k}"
        k += 1
    taken.add(name)
    return name
