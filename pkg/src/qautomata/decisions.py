"""Decision procedures over quantitative automata.

Every procedure returns a Verdict.  Negative answers carry a lasso witness
that is re-evaluated exactly before it is handed out.  Combinations that are
undecidable, or that have no complete procedure here, raise instead of
guessing; refutation-only variants are opt-in.
"""

from __future__ import annotations

from collections import deque
from enum import Enum
from fractions import Fraction

from . import oracle
from .buchi import buchi_included, buchi_universal, cut_buchi
from .core import (AlphabetMismatchError, Automaton, LassoWord, UndecidableError, UnimplementedProblemError,
                   UnsupportedValueFunctionError, ValueFunction, Verdict)
from .graph import (bottom_value_deterministic, cap_values, eval_lasso, max_mean_cycle, min_mean_cycle,
                    scc_decompose, top_value)
from .safety import safety_closure

VF = ValueFunction


class Support(Enum):
    SUPPORTED = "supported"
    UNDECIDABLE = "undecidable"
    UNIMPLEMENTED = "unimplemented"


_PROBLEMS = ("nonemptiness", "universality", "inclusion", "equivalence", "bottom value",
             "constant", "safety", "liveness")


def problem_support(problem: str, f: VF, deterministic: bool) -> Support:
    if problem not in _PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    if deterministic or not f.limit_average:
        return Support.SUPPORTED
    if problem in ("universality", "inclusion", "equivalence", "bottom value"):
        return Support.UNDECIDABLE
    if problem in ("constant", "safety"):
        return Support.UNIMPLEMENTED
    return Support.SUPPORTED


def _require(problem, f, deterministic):
    status = problem_support(problem, f, deterministic)
    kind = "deterministic" if deterministic else "nondeterministic"
    if status is Support.UNDECIDABLE:
        raise UndecidableError(f"{problem} of {kind} {f} automata is undecidable")
    if status is Support.UNIMPLEMENTED:
        raise UnimplementedProblemError(
            f"{problem} of {kind} {f} automata has no complete procedure here; use refutation mode")


def _check_alphabets(A, B):
    if set(A.alphabet) != set(B.alphabet):
        raise AlphabetMismatchError(f"alphabets differ: {sorted(A.alphabet)} vs {sorted(B.alphabet)}")


def is_non_empty(A: Automaton, f: VF, v) -> Verdict:
    top, w = top_value(A, f)
    if top >= v:
        return Verdict.boolean(True, witness=w, note=f"top value {top}")
    return Verdict.boolean(False, note=f"top value {top} is below the threshold")


def is_universal(A: Automaton, f: VF, v) -> Verdict:
    det = A.is_deterministic()
    _require("universality", f, det)
    if det:
        bottom, w = bottom_value_deterministic(A, f)
        if bottom >= v:
            return Verdict.boolean(True, note=f"bottom value {bottom}")
        return _refuted(w, eval_lasso(A, f, w) < v, f"value {bottom} is below the threshold")
    res = buchi_universal(cut_buchi(A, f, v))
    if res.holds:
        return Verdict.boolean(True, note="threshold cut is universal")
    w = res.witness
    return _refuted(w, eval_lasso(A, f, w) < v, "word outside the threshold cut")


def _refuted(w, ok, note=""):
    assert ok, f"witness {w} failed re-validation"
    return Verdict.boolean(False, witness=w, note=note)


def is_included(A: Automaton, B: Automaton, f: VF, g: VF = None, refute_only=False,
                stem_bound=4, period_bound=4) -> Verdict:
    """Does A(w) <= B(w) hold for every word?  B is read with g (default f)."""
    _check_alphabets(A, B)
    g = f if g is None else g
    if f.basic and g.basic:
        for v in A.weights():
            res = buchi_included(cut_buchi(A, f, v), cut_buchi(B, g, v))
            if not res.holds:
                w = res.witness
                return _refuted(w, eval_lasso(A, f, w) > eval_lasso(B, g, w), f"threshold {v}")
        return Verdict.boolean(True, note="all threshold cuts included")
    if f is not g or not f.limit_average:
        raise UnsupportedValueFunctionError(f"inclusion between {f} and {g} automata is not supported")
    det = A.is_deterministic() and B.is_deterministic()
    if not det and refute_only:
        w = oracle.brute_force_inclusion_refute(A, B, f, stem_bound, period_bound)
        if w is None:
            return Verdict.boolean(None, note=f"no refuting lasso within bounds {stem_bound}/{period_bound}")
        return _refuted(w, eval_lasso(A, f, w) > eval_lasso(B, f, w), "refutation search")
    _require("inclusion", f, det)
    P, names = _difference_product(A, B)
    res = max_mean_cycle(P)
    if res is None or res[0] <= 0:
        return Verdict.boolean(True, note="no reachable cycle with positive difference")
    mean, cyc = res
    w = LassoWord(_stem_to(P, cyc.transitions[0].source), cyc.letters)
    return _refuted(w, eval_lasso(A, f, w) - eval_lasso(B, f, w) == mean > 0, f"difference mean {mean}")


def _difference_product(A, B):
    """Reachable synchronized product of two deterministic automata weighted A minus B."""
    start = (A.initial, B.initial)
    names = {start: "p0"}
    todo = deque([start])
    ts = []
    while todo:
        qa, qb = todo.popleft()
        for a in A.alphabet:
            (xa, pa), = A.successors(qa, a)
            (xb, pb), = B.successors(qb, a)
            nxt = (pa, pb)
            if nxt not in names:
                names[nxt] = f"p{len(names)}"
                todo.append(nxt)
            ts.append((names[qa, qb], a, xa - xb, names[nxt]))
    return Automaton(ts, initial="p0", alphabet=A.alphabet, states=list(names.values())), names


def _stem_to(A: Automaton, target):
    """Shortest letter sequence from the initial state to target (BFS in declaration order)."""
    parent = {A.initial: None}
    todo = deque([A.initial])
    while todo:
        q = todo.popleft()
        if q == target:
            break
        for a in A.alphabet:
            for _, p in A.successors(q, a):
                if p not in parent:
                    parent[p] = (q, a)
                    todo.append(p)
    if target not in parent:
        raise ValueError(f"state {target!r} is unreachable")
    out = []
    while parent[target] is not None:
        target, a = parent[target]
        out.append(a)
    return tuple(reversed(out))


def are_equivalent(A: Automaton, B: Automaton, f: VF, refute_only=False, stem_bound=4, period_bound=4) -> Verdict:
    if f.limit_average and not (A.is_deterministic() and B.is_deterministic()) and not refute_only:
        _require("equivalence", f, False)
    opts = dict(refute_only=refute_only, stem_bound=stem_bound, period_bound=period_bound)
    fwd = is_included(A, B, f, **opts)
    if fwd.holds is False:
        fwd.note = "left side is larger: " + fwd.note
        return fwd
    bwd = is_included(B, A, f, **opts)
    if bwd.holds is False:
        bwd.note = "right side is larger: " + bwd.note
        return bwd
    if fwd.holds is None or bwd.holds is None:
        return Verdict.boolean(None, note=f"no refuting lasso within bounds {stem_bound}/{period_bound}")
    return Verdict.boolean(True)


def bottom_value(A: Automaton, f: VF) -> Verdict:
    det = A.is_deterministic()
    _require("bottom value", f, det)
    if det:
        value, w = bottom_value_deterministic(A, f)
        assert eval_lasso(A, f, w) == value
        return Verdict.numeric(value, witness=w)
    ws = A.weights()
    witness = None
    for v in reversed(ws):
        res = is_universal(A, f, v)
        if res.holds:
            if witness is None:
                _, witness = top_value(A, f)
            assert eval_lasso(A, f, witness) == v
            return Verdict.numeric(v, witness=witness)
        witness = res.witness
    raise AssertionError("every automaton is universal at its minimum weight")


def is_constant(A: Automaton, f: VF, refute_only=False, stem_bound=4, period_bound=4) -> Verdict:
    top, top_w = top_value(A, f)
    det = A.is_deterministic()
    if f.basic:
        res = is_universal(A, f, top)
        return res if res.holds else _refuted(res.witness, eval_lasso(A, f, res.witness) < top, res.note)
    if det:
        bottom, w = bottom_value_deterministic(A, f)
        if bottom == top:
            return Verdict.boolean(True, note=f"constant {top}")
        return _refuted(w, eval_lasso(A, f, w) < top, f"value {bottom} is below the top value {top}")
    if not refute_only:
        _require("constant", f, det)
    for w in _candidates(A, stem_bound, period_bound):
        if eval_lasso(A, f, w) < top:
            return _refuted(w, True, "refutation search")
    return Verdict.boolean(None, note=f"no refuting lasso within bounds {stem_bound}/{period_bound}")


def is_safe(A: Automaton, f: VF, refute_only=False, stem_bound=4, period_bound=4) -> Verdict:
    if f is VF.Inf:
        return Verdict.boolean(True, note="Inf automata are safe")
    S = safety_closure(A, f)
    det = A.is_deterministic()
    if f.basic:
        res = is_included(S, A, VF.Inf, f)
        if res.holds:
            return res
        w = res.witness
        return _refuted(w, eval_lasso(S, VF.Inf, w) > eval_lasso(A, f, w), res.note)
    if det:
        return _safe_deterministic_average(A, f, S)
    if not refute_only:
        _require("safety", f, det)
    for w in _candidates(A, stem_bound, period_bound):
        if eval_lasso(S, VF.Inf, w) > eval_lasso(A, f, w):
            return _refuted(w, True, "refutation search")
    return Verdict.boolean(None, note=f"no refuting lasso within bounds {stem_bound}/{period_bound}")


def _safe_deterministic_average(A, f, S):
    # The deterministic run settles in one component D.  Its closure value is
    # cap(D) and its value ranges down to the minimum cycle mean of D.
    caps = cap_values(A, f)
    part = scc_decompose(A)
    reach = set(_reachable(A))
    for k, comp in enumerate(part.components):
        if not part.has_internal_cycle[k] or not comp & reach:
            continue
        mean, cyc = min_mean_cycle(A, sorted(comp, key=A.state_index))
        cap = caps[next(iter(comp))]
        if mean < cap:
            w = LassoWord(_stem_to(A, cyc.transitions[0].source), cyc.letters)
            return _refuted(w, eval_lasso(S, VF.Inf, w) > eval_lasso(A, f, w),
                            f"cycle mean {mean} below the cap {cap}")
    return Verdict.boolean(True, note="every component attains its cap on all cycles")


def _reachable(A):
    seen = {A.initial}
    todo = [A.initial]
    while todo:
        q = todo.pop()
        for a in A.alphabet:
            for _, p in A.successors(q, a):
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
    return seen


def _candidates(A: Automaton, stem_bound, period_bound):
    """Lassos to try when refuting: structural ones first, then the bounded sweep.

    A structural candidate is the shortest stem to a state on a cycle followed
    by a simple cycle through that state, visited component by component.
    """
    part = scc_decompose(A)
    reach = _reachable(A)
    for k, comp in enumerate(part.components):
        if not part.has_internal_cycle[k]:
            continue
        for q in sorted(comp & reach, key=A.state_index):
            stem = _stem_to(A, q)
            for cyc in _simple_cycles(A, q, comp):
                yield LassoWord(stem, cyc)
    yield from oracle.enumerate_lassos(A.alphabet, stem_bound, period_bound)


def _simple_cycles(A, q, comp, limit=200):
    """Letter sequences of simple cycles through q inside comp, shortest first."""
    found = []
    stack = [(q, (), frozenset([q]))]
    while stack and len(found) < limit:
        state, word, used = stack.pop()
        for a in reversed(A.alphabet):
            for _, p in A.successors(state, a):
                if p == q:
                    found.append(word + (a,))
                elif p in comp and p not in used:
                    stack.append((p, word + (a,), used | {p}))
    order = {a: i for i, a in enumerate(A.alphabet)}
    return sorted(set(found), key=lambda c: (len(c), [order[a] for a in c]))


def is_live(A: Automaton, f: VF) -> Verdict:
    S = safety_closure(A, f)
    top, _ = top_value(A, f)
    res = is_constant(S, VF.Inf)
    if res.holds:
        return Verdict.boolean(True, note=f"closure is constant {top}")
    w = res.witness
    return _refuted(w, eval_lasso(S, VF.Inf, w) < top, "closure drops below the top value")


def threshold(text) -> Fraction:
    """Parse a finite rational threshold such as ``5`` or ``7/2``."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational threshold: {text!r}") from None


__all__ = [
    "Support",
    "are_equivalent",
    "bottom_value",
    "is_constant",
    "is_included",
    "is_live",
    "is_non_empty",
    "is_safe",
    "is_universal",
    "problem_support",
    "threshold",
]
