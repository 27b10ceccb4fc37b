"""Safety closure, liveness component and the safety-liveness decomposition."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import NEG_INF, Automaton, UnsupportedValueFunctionError, ValueFunction, fresh_name
from .graph import best_cycle, cap_values, scc_decompose, top_value

VF = ValueFunction


def safety_closure(A: Automaton, f: VF) -> Automaton:
    """An Inf-automaton for the least safety property above A's function."""
    if f is VF.Inf:
        return A
    caps = cap_values(A, f)
    if f.prefix_independent:
        return A.map_weights(lambda t: caps[t.target])

    # Sup: remember the largest weight seen so far
    levels = [NEG_INF] + list(A.weights())
    taken = set()
    names = {}
    for q in A.states:
        for m in levels:
            names[q, m] = fresh_name(f"{q}_{_tag(m)}", taken)
    start = (A.initial, NEG_INF)
    seen = {start}
    todo = deque([start])
    ts = []
    while todo:
        q, m = todo.popleft()
        for a in A.alphabet:
            for x, p in A.successors(q, a):
                m2 = max(m, x)
                ts.append((names[q, m], a, max(m2, caps[p]), names[p, m2]))
                if (p, m2) not in seen:
                    seen.add((p, m2))
                    todo.append((p, m2))
    order = [names[k] for k in names if k in seen]
    return Automaton(ts, initial=names[start], alphabet=A.alphabet, states=order)


def _tag(m):
    if m == NEG_INF:
        return "none"
    return str(m).replace("-", "m").replace("/", "_")


def _subsets(A: Automaton):
    """Reachable subsets of the subset construction with their transitions."""
    start = frozenset([A.initial])
    index = {start: 0}
    order = [start]
    edges = []
    i = 0
    while i < len(order):
        R = order[i]
        for a in A.alphabet:
            S = frozenset(p for q in R for _, p in A.successors(q, a))
            if S not in index:
                index[S] = len(order)
                order.append(S)
            edges.append((i, a, index[S]))
        i += 1
    return order, edges


def liveness_component(A: Automaton, f: VF) -> Automaton:
    """Automaton C with min(closure(w), C(w)) = A(w) whose own closure is constant.

    Three layers: a copy of A; a top-weighted copy of the best cycle of every
    component whose cycle value reaches its cap; a sink at the minimum weight.
    Jumping into a middle copy is only sound when no other run of A could
    still do better, i.e. when the largest cap over the current subset equals
    the cap of the jump state.  Where that holds on every reachable subset the
    jump leaves the copy of A directly.  Otherwise it is taken from a layer of
    subset-tracking states that runs alongside A.
    """
    if not f.prefix_independent:
        raise UnsupportedValueFunctionError(f"no liveness component construction for {f} automata")
    top, _ = top_value(A, f)
    lo = A.weights()[0]
    caps = cap_values(A, f)
    part = scc_decompose(A)

    cycles = []  # (component index, CycleDescriptor)
    for k, comp in enumerate(part.components):
        if not part.has_internal_cycle[k]:
            continue
        value, cyc = best_cycle(A, f, comp)
        if value == caps[next(iter(comp))]:
            cycles.append((k, cyc))

    subsets, subset_edges = _subsets(A)
    level = [max(caps[q] for q in R) for R in subsets]
    on_cycle = {t.source for _, cyc in cycles for t in cyc.transitions}
    unsafe = {q for q in on_cycle
              if any(q in R and lv != caps[q] for R, lv in zip(subsets, level))}

    taken = set(A.states)
    ts = [(t.source, t.letter, t.weight, t.target) for t in A.transitions]
    states = list(A.states)
    sink = fresh_name("q_bot", taken)

    entries = {}  # upper state -> list of (letter, middle target)
    for k, cyc in cycles:
        n = len(cyc.transitions)
        mids = [fresh_name(f"{t.source}_top", taken) for t in cyc.transitions]
        states.extend(mids)
        for i, t in enumerate(cyc.transitions):
            nxt = mids[(i + 1) % n]
            ts.append((mids[i], t.letter, top, nxt))
            for a in A.alphabet:
                if a != t.letter:
                    ts.append((mids[i], a, lo, sink))
            entries.setdefault(t.source, []).append((t.letter, nxt))
            if t.source not in unsafe:
                ts.append((t.source, t.letter, top, nxt))

    initial = A.initial
    if unsafe:
        names = [fresh_name(f"track{i}", taken) for i in range(len(subsets))]
        states = names[:1] + states + names[1:]
        initial = names[0]
        for t in A.transitions:
            if t.source == A.initial:
                ts.append((initial, t.letter, t.weight, t.target))
        for i, a, j in subset_edges:
            ts.append((names[i], a, lo, names[j]))
        for i, R in enumerate(subsets):
            for q in sorted(R & set(entries), key=A.state_index):
                if caps[q] == level[i]:
                    for a, nxt in entries[q]:
                        ts.append((names[i], a, top, nxt))

    states.append(sink)
    ts.extend((sink, a, lo, sink) for a in A.alphabet)
    return Automaton(ts, initial=initial, alphabet=A.alphabet, states=states)


@dataclass(frozen=True)
class Decomposition:
    safety_part: Automaton  # read with Inf
    liveness_part: Automaton  # read with value_function
    source: Automaton
    value_function: ValueFunction


def decompose(A: Automaton, f: VF) -> Decomposition:
    if f is VF.Inf:
        top, _ = top_value(A, f)
        const = Automaton([("c", a, top, "c") for a in A.alphabet], initial="c", alphabet=A.alphabet)
        return Decomposition(A, const, A, f)
    if not f.prefix_independent:
        raise UnsupportedValueFunctionError(
            f"safety-liveness decomposition of {f} automata is not supported (only Inf and prefix-independent)")
    return Decomposition(safety_closure(A, f), liveness_component(A, f), A, f)


__all__ = ["Decomposition", "decompose", "liveness_component", "safety_closure"]
