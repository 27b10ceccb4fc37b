"""Online monitoring: feed letters one at a time, read off value bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import Automaton, QuantError, UnknownLetterError, ValueFunction, format_weight
from .graph import bottom_values_deterministic, cap_values

VF = ValueFunction

BOUNDS = "bounds"
AVERAGE = "avg"


class UnsupportedModeError(QuantError):
    pass


@dataclass(frozen=True)
class MonitorReport:
    n: int
    highest: Fraction
    lowest: Optional[Fraction] = None
    average: Optional[Fraction] = None
    heuristic_average: bool = False

    def __str__(self):
        parts = [f"n={self.n}", f"high={format_weight(self.highest)}"]
        if self.lowest is not None:
            parts.append(f"low={format_weight(self.lowest)}")
        if self.average is not None:
            parts.append(f"avg={format_weight(self.average)}")
        return " ".join(parts)


@dataclass
class MonitorState:
    automaton: Automaton
    f: ValueFunction
    mode: str
    reached: frozenset
    n: int = 0
    seen: Optional[Fraction] = None  # min (Inf) or max (Sup) weight along the deterministic run
    total: Fraction = Fraction(0)
    caps: dict = field(default_factory=dict, repr=False)
    bottoms: Optional[dict] = field(default=None, repr=False)

    def _combine(self, stat, x):
        if stat is None or self.f.prefix_independent:
            return x
        return min(stat, x) if self.f is VF.Inf else max(stat, x)

    def report(self) -> MonitorReport:
        high = max(self._combine(self.seen, self.caps[q]) for q in self.reached)
        low = None
        if self.bottoms is not None:
            (q,) = self.reached
            low = self._combine(self.seen, self.bottoms[q])
        avg = None
        if self.mode == AVERAGE and self.n:
            avg = self.total / self.n
        return MonitorReport(self.n, high, low, avg, heuristic_average=self.bottoms is None)

    def step(self, letter) -> MonitorReport:
        A = self.automaton
        if letter not in A.alphabet:
            raise UnknownLetterError(f"letter {letter!r} is not in the alphabet")
        moves = [wt for q in self.reached for wt in A.successors(q, letter)]
        if self.bottoms is not None:
            ((x, _),) = moves
            if self.f is VF.Inf:
                self.seen = x if self.seen is None else min(self.seen, x)
            elif self.f is VF.Sup:
                self.seen = x if self.seen is None else max(self.seen, x)
        self.total += max(x for x, _ in moves)
        self.reached = frozenset(p for _, p in moves)
        self.n += 1
        return self.report()

    def feed(self, letters):
        return [self.step(a) for a in letters]


def create_monitor(A: Automaton, f: VF, mode: str = BOUNDS) -> MonitorState:
    det = A.is_deterministic()
    if mode not in (BOUNDS, AVERAGE):
        raise UnsupportedModeError(f"unknown monitor mode {mode!r}")
    if mode == BOUNDS and not (f.prefix_independent or det):
        raise UnsupportedModeError(f"bounds monitoring of nondeterministic {f} automata is not supported")
    if mode == AVERAGE and not f.limit_average:
        raise UnsupportedModeError(f"running averages need a limit-average value function, not {f}")
    caps = cap_values(A, f)
    bottoms = bottom_values_deterministic(A, f) if det else None
    return MonitorState(A, f, mode, frozenset([A.initial]), caps=caps, bottoms=bottoms)


__all__ = ["AVERAGE", "BOUNDS", "MonitorReport", "MonitorState", "UnsupportedModeError", "create_monitor"]
