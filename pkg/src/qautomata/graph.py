"""Graph algorithms behind values of quantitative automata.

Everything works on a small integer-indexed multigraph whose edges carry a
letter label and an exact weight.  The automaton itself and the product of an
automaton with a lasso shape are both turned into such a graph, so the same
per-value-function optimisation serves top values, per-state caps and word
evaluation.

Tie-breaking is deterministic throughout: fewer transitions first, then the
order (source index, letter index, target index, weight).
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    Automaton,
    LassoWord,
    NEG_INF,
    NotDeterministicError,
    Transition,
    UnknownStateError,
    ValueFunction,
)

VF = ValueFunction


class Graph:
    """Edges are tuples (src, label, dst, weight); out-lists are kept sorted."""

    def __init__(self, n, edges):
        self.n = n
        self.edges = sorted(edges)
        self.out = [[] for _ in range(n)]
        for e in self.edges:
            self.out[e[0]].append(e)

    @classmethod
    def of_automaton(cls, A: Automaton) -> "Graph":
        edges = [(A.state_index(t.source), A.letter_index(t.letter), A.state_index(t.target), t.weight)
                 for t in A.transitions]
        return cls(len(A.states), edges)


def _always(e):
    return True


def strongly_connected(g: Graph, edge_ok=_always, vertices=None):
    """Tarjan's algorithm.

    Returns (components, comp_of) with components in topological order of the
    condensation (sources first, ties by smallest vertex).  Only edges passing
    edge_ok with both endpoints in ``vertices`` (default: all) are used.
    """
    if vertices is None:
        vertices = range(g.n)
    inside = set(vertices)
    index = {}
    low = {}
    on_stack = set()
    stack = []
    raw = []
    counter = 0
    for root in sorted(inside):
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, i = work[-1]
            out = g.out[v]
            while i < len(out):
                e = out[i]
                i += 1
                w = e[2]
                if w not in inside or not edge_ok(e):
                    continue
                if w not in index:
                    work[-1] = (v, i)
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, 0))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    raw.append(sorted(comp))
    comp_of = {}
    for k, comp in enumerate(raw):
        for v in comp:
            comp_of[v] = k
    # Kahn's algorithm on the condensation, smallest member first among ready components
    succ = [set() for _ in raw]
    indeg = [0] * len(raw)
    for e in g.edges:
        if e[0] in inside and e[2] in inside and edge_ok(e):
            a, b = comp_of[e[0]], comp_of[e[2]]
            if a != b and b not in succ[a]:
                succ[a].add(b)
                indeg[b] += 1
    ready = [(raw[k][0], k) for k in range(len(raw)) if indeg[k] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        _, k = heapq.heappop(ready)
        order.append(k)
        for b in succ[k]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(ready, (raw[b][0], b))
    renum = {k: i for i, k in enumerate(order)}
    components = [raw[k] for k in order]
    comp_of = {v: renum[k] for v, k in comp_of.items()}
    return components, comp_of


def cyclic_components(g: Graph, components, comp_of, edge_ok=_always):
    """Flags: does the component contain an edge between its own vertices?"""
    flags = [False] * len(components)
    for e in g.edges:
        if e[0] in comp_of and e[2] in comp_of and comp_of[e[0]] == comp_of[e[2]] and edge_ok(e):
            flags[comp_of[e[0]]] = True
    return flags


def reachable(g: Graph, starts, edge_ok=_always):
    seen = set(starts)
    todo = list(seen)
    while todo:
        v = todo.pop()
        for e in g.out[v]:
            if e[2] not in seen and edge_ok(e):
                seen.add(e[2])
                todo.append(e[2])
    return seen


def bfs_tree(g: Graph, start, edge_ok=_always):
    """Shortest-path tree: dict vertex -> edge used to reach it (None for start)."""
    parent = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in g.out[v]:
            if e[2] not in parent and edge_ok(e):
                parent[e[2]] = e
                queue.append(e[2])
    return parent


def tree_path(parent, v):
    path = []
    while parent[v] is not None:
        e = parent[v]
        path.append(e)
        v = e[0]
    path.reverse()
    return path


def shortest_cycle_through(g: Graph, v, edge_ok=_always):
    """Shortest closed walk v -> ... -> v, or None."""
    parent = {}
    queue = deque()
    for e in g.out[v]:
        if not edge_ok(e):
            continue
        if e[2] == v:
            return [e]
        if e[2] not in parent:
            parent[e[2]] = e
            queue.append(e[2])
    while queue:
        u = queue.popleft()
        for e in g.out[u]:
            if not edge_ok(e):
                continue
            if e[2] == v:
                path = [e]
                while u != v:
                    pe = parent[u]
                    path.append(pe)
                    u = pe[0]
                path.reverse()
                return path
            if e[2] not in parent:
                parent[e[2]] = e
                queue.append(e[2])
    return None


def shortest_cycle_among(g: Graph, vertices, edge_ok=_always):
    """Shortest cycle through any of the given vertices (smallest vertex wins ties)."""
    best = None
    for v in sorted(vertices):
        c = shortest_cycle_through(g, v, edge_ok)
        if c is not None and (best is None or len(c) < len(best)):
            best = c
    return best


def _karp(g: Graph, comp, edge_ok=_always) -> Optional[Fraction]:
    """Maximum cycle mean of a strongly connected vertex set (exact)."""
    inside = set(comp)
    m = len(comp)
    src = comp[0]
    inner = [e for e in g.edges if e[0] in inside and e[2] in inside and edge_ok(e)]
    if not inner:
        return None
    D = [{src: Fraction(0)}]
    for _ in range(m):
        prev = D[-1]
        cur = {}
        for e in inner:
            if e[0] in prev:
                val = prev[e[0]] + e[3]
                if e[2] not in cur or val > cur[e[2]]:
                    cur[e[2]] = val
        D.append(cur)
    best = None
    for v, dm in D[m].items():
        worst = None
        for k in range(m):
            if v in D[k]:
                q = (dm - D[k][v]) / (m - k)
                if worst is None or q < worst:
                    worst = q
        if worst is not None and (best is None or worst > best):
            best = worst
    return best


def _tight_edges(g: Graph, comp, mean, edge_ok=_always):
    """Edges lying on some cycle of the given mean (all cycles have mean <= mean)."""
    inside = set(comp)
    inner = [e for e in g.edges if e[0] in inside and e[2] in inside and edge_ok(e)]
    pot = {v: Fraction(0) for v in comp}
    for _ in range(len(comp)):
        changed = False
        for e in inner:
            val = pot[e[0]] + e[3] - mean
            if val > pot[e[2]]:
                pot[e[2]] = val
                changed = True
        if not changed:
            break
    return {e for e in inner if pot[e[0]] + e[3] - mean == pot[e[2]]}


def max_mean_cycle_in(g: Graph, vertices, edge_ok=_always):
    """(mean, edge list) of a maximum-mean cycle within the vertex set, or None."""
    components, comp_of = strongly_connected(g, edge_ok, vertices)
    best = None
    cands = []
    for comp in components:
        lam = _karp(g, comp, edge_ok)
        if lam is None:
            continue
        if best is None or lam > best:
            best, cands = lam, [comp]
        elif lam == best:
            cands.append(comp)
    if best is None:
        return None
    cycle = None
    for comp in cands:
        tight = _tight_edges(g, comp, best, edge_ok)
        c = shortest_cycle_among(g, comp, lambda e: e in tight)
        if cycle is None or len(c) < len(cycle) or (len(c) == len(cycle) and c[0][0] < cycle[0][0]):
            cycle = c
    return best, cycle


def component_value(g: Graph, comp, f: VF, edge_ok=_always):
    """Best value of cycling forever inside the component, with a witnessing cycle.

    Only for prefix-independent f.  Returns None if the component has no cycle.
    """
    inside = set(comp)
    inner = [e for e in g.edges if e[0] in inside and e[2] in inside and edge_ok(e)]
    if not inner:
        return None
    if f.limit_average:
        return max_mean_cycle_in(g, comp, edge_ok)
    if f is VF.LimSup:
        top = max(e[3] for e in inner)
        best = None
        for e in inner:
            if e[3] != top:
                continue
            if e[2] == e[0]:
                back = []
            else:
                back = _path_within(g, e[2], e[0], inside, edge_ok)
            c = [e] + back
            if best is None or len(c) < len(best):
                best = c
        return top, best
    if f is VF.LimInf:
        for x in sorted({e[3] for e in inner}, reverse=True):
            ok = (lambda e, x=x: edge_ok(e) and e[3] >= x)
            c = shortest_cycle_among(g, comp, lambda e: e[0] in inside and e[2] in inside and ok(e))
            if c is not None:
                return x, c
    raise ValueError(f"no cycle value for {f}")


def _path_within(g, a, b, inside, edge_ok):
    parent = bfs_tree(g, a, lambda e: e[2] in inside and edge_ok(e))
    return tree_path(parent, b)


def caps(g: Graph, f: VF):
    """For every vertex, the supremum of f over infinite paths starting there."""
    if f is VF.Inf:
        cap = [None] * g.n
        for x in sorted({e[3] for e in g.edges}):
            ok = (lambda e, x=x: e[3] >= x)
            for v in _infinite_path_vertices(g, ok):
                cap[v] = x
        return cap
    components, comp_of = strongly_connected(g)
    local = []
    for comp in components:
        if f is VF.Sup:
            local.append(max((e[3] for v in comp for e in g.out[v]), default=None))
        else:
            cv = component_value(g, comp, f)
            local.append(None if cv is None else cv[0])
    best = [None] * len(components)
    for k in range(len(components) - 1, -1, -1):
        val = local[k]
        for v in components[k]:
            for e in g.out[v]:
                b = best[comp_of[e[2]]]
                if b is not None and (val is None or b > val):
                    val = b
        best[k] = val
    return [best[comp_of[v]] for v in range(g.n)]


def _infinite_path_vertices(g: Graph, edge_ok):
    """Vertices with an infinite path using only edges passing edge_ok."""
    components, comp_of = strongly_connected(g, edge_ok)
    flags = cyclic_components(g, components, comp_of, edge_ok)
    alive = {v for k, comp in enumerate(components) if flags[k] for v in comp}
    # backward closure within the filtered graph
    preds = [[] for _ in range(g.n)]
    for e in g.edges:
        if edge_ok(e):
            preds[e[2]].append(e[0])
    todo = list(alive)
    while todo:
        v = todo.pop()
        for u in preds[v]:
            if u not in alive:
                alive.add(u)
                todo.append(u)
    return alive


def top_lasso(g: Graph, start, f: VF):
    """(value, stem edges, cycle edges) of an optimal lasso path from start."""
    if f is VF.Inf:
        x = caps(g, f)[start]
        ok = (lambda e: e[3] >= x)
        components, comp_of = strongly_connected(g, ok)
        flags = cyclic_components(g, components, comp_of, ok)
        on_cycle = {v for k, comp in enumerate(components) if flags[k] for v in comp}
        parent = bfs_tree(g, start, ok)
        stem, entry = _nearest(parent, on_cycle)
        return x, stem, shortest_cycle_through(g, entry, ok)

    components, comp_of = strongly_connected(g)
    parent = bfs_tree(g, start)
    dist = {v: len(tree_path(parent, v)) for v in parent}

    if f is VF.Sup:
        top = max(e[3] for v in parent for e in g.out[v])
        e = min((e for v in parent for e in g.out[v] if e[3] == top), key=lambda e: (dist[e[0]], e))
        flags = cyclic_components(g, components, comp_of)
        on_cycle = {v for k, comp in enumerate(components) if flags[k] for v in comp}
        tail, entry = _nearest(bfs_tree(g, e[2]), on_cycle)
        return top, tree_path(parent, e[0]) + [e] + tail, shortest_cycle_through(g, entry)

    best = None
    for k, comp in enumerate(components):
        if comp[0] not in parent:
            continue
        cv = component_value(g, comp, f)
        if cv is None:
            continue
        value, cycle = cv
        entry_pos = min(range(len(cycle)), key=lambda i: (dist[cycle[i][0]], cycle[i][0]))
        key = (-value, dist[cycle[entry_pos][0]], len(cycle), cycle[entry_pos][0])
        if best is None or key < best[0]:
            best = (key, value, cycle[entry_pos:] + cycle[:entry_pos])
    _, value, cycle = best
    return value, tree_path(parent, cycle[0][0]), cycle


def _nearest(parent, targets):
    """Path in a BFS tree to the closest target vertex (BFS order breaks ties)."""
    for v in parent:  # dict preserves BFS discovery order
        if v in targets:
            return tree_path(parent, v), v
    raise AssertionError("no target reachable; automaton not total?")


# ---------------------------------------------------------------------------
# automaton-level API


@dataclass(frozen=True)
class SccPartition:
    components: tuple
    component_index: dict
    has_internal_cycle: tuple


@dataclass(frozen=True)
class CycleDescriptor:
    transitions: tuple
    letters: tuple
    mean: Fraction
    min_weight: Fraction
    max_weight: Fraction

    @classmethod
    def from_transitions(cls, ts):
        ts = tuple(ts)
        for a, b in zip(ts, ts[1:] + ts[:1]):
            if a.target != b.source:
                raise ValueError("transitions do not form a closed walk")
        ws = [t.weight for t in ts]
        return cls(ts, tuple(t.letter for t in ts), Fraction(sum(ws)) / len(ws), min(ws), max(ws))


def _to_transitions(A: Automaton, edges):
    return [Transition(A.states[e[0]], A.alphabet[e[1]], e[3], A.states[e[2]]) for e in edges]


def _letters(A, edges):
    return tuple(A.alphabet[e[1]] for e in edges)


def scc_decompose(A: Automaton) -> SccPartition:
    g = Graph.of_automaton(A)
    components, comp_of = strongly_connected(g)
    flags = cyclic_components(g, components, comp_of)
    comps = tuple(frozenset(A.states[v] for v in comp) for comp in components)
    index = {A.states[v]: k for v, k in comp_of.items()}
    return SccPartition(comps, index, tuple(flags))


def cap_values(A: Automaton, f: VF) -> dict:
    """capValue for every state at once."""
    g = Graph.of_automaton(A)
    return dict(zip(A.states, caps(g, f)))


def cap_value(A: Automaton, f: VF, state: str):
    i = A.state_index(state)
    return caps(Graph.of_automaton(A), f)[i]


def top_value(A: Automaton, f: VF):
    """(top value, witness lasso) with the witness attaining the top value."""
    g = Graph.of_automaton(A)
    value, stem, cycle = top_lasso(g, A.state_index(A.initial), f)
    return value, LassoWord(_letters(A, stem), _letters(A, cycle))


def max_mean_cycle(A: Automaton, restrict_to=None):
    g = Graph.of_automaton(A)
    if restrict_to is None:
        restrict_to = A.states
    verts = [A.state_index(q) for q in restrict_to]
    res = max_mean_cycle_in(g, verts)
    if res is None:
        return None
    mean, cycle = res
    return mean, CycleDescriptor.from_transitions(_to_transitions(A, cycle))


def best_cycle(A: Automaton, f: VF, scc):
    if not f.prefix_independent:
        raise ValueError("best_cycle needs a prefix-independent value function")
    g = Graph.of_automaton(A)
    verts = sorted(A.state_index(q) for q in scc)
    res = component_value(g, verts, f)
    if res is None:
        return None
    value, cycle = res
    return value, CycleDescriptor.from_transitions(_to_transitions(A, cycle))


def lasso_product(A: Automaton, w: LassoWord):
    """Product of A with the lasso shape of w; vertex 0 is (initial, position 0)."""
    A.check_word(w.stem + w.period)
    word = w.stem + w.period
    k, loop = len(word), len(w.stem)
    ids = {(A.initial, 0): 0}
    order = [(A.initial, 0)]
    edges = []
    i = 0
    while i < len(order):
        q, pos = order[i]
        a = word[pos]
        nxt = pos + 1 if pos + 1 < k else loop
        for x, p in A.successors(q, a):
            node = (p, nxt)
            if node not in ids:
                ids[node] = len(order)
                order.append(node)
            edges.append((i, A.letter_index(a), ids[node], x))
        i += 1
    return Graph(len(order), edges), order


def eval_lasso(A: Automaton, f: VF, w: LassoWord):
    """Exact value A(u v^omega): supremum over runs of f applied to the weights."""
    g, _ = lasso_product(A, w)
    return caps(g, f)[0]


def dual(A: Automaton, f: VF):
    """Automaton/value-function pair computing the negation of A's function (deterministic A)."""
    return A.negated(), f.dual


def bottom_value_deterministic(A: Automaton, f: VF):
    if not A.is_deterministic():
        raise NotDeterministicError("the bottom value by duality needs a deterministic automaton")
    B, g = dual(A, f)
    value, w = top_value(B, g)
    return -value, w


def bottom_values_deterministic(A: Automaton, f: VF) -> dict:
    """Per-state bottom value (infimum over continuations) of a deterministic automaton."""
    if not A.is_deterministic():
        raise NotDeterministicError("per-state bottom values need a deterministic automaton")
    B, g = dual(A, f)
    return {q: -v for q, v in cap_values(B, g).items()}


def min_mean_cycle(A: Automaton, restrict_to):
    res = max_mean_cycle(A.negated(), restrict_to)
    if res is None:
        return None
    mean, cyc = res
    ts = [t for t in A.transitions]
    lookup = {(t.source, t.letter, t.target, -t.weight): t for t in ts}
    orig = [lookup[(t.source, t.letter, t.target, t.weight)] for t in cyc.transitions]
    return -mean, CycleDescriptor.from_transitions(orig)


__all__ = [
    "CycleDescriptor",
    "Graph",
    "SccPartition",
    "best_cycle",
    "bottom_value_deterministic",
    "bottom_values_deterministic",
    "cap_value",
    "cap_values",
    "eval_lasso",
    "max_mean_cycle",
    "min_mean_cycle",
    "scc_decompose",
    "top_value",
    "NEG_INF",
]
