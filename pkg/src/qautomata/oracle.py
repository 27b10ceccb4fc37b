"""Brute-force reference semantics, independent of the graph module.

Lasso words u v^omega are evaluated through small matrices over
(max, min), (max, max) and (max, +) semirings: a stem vector records the best
run statistic reaching each state after u, and a block matrix summarises one
pass over v.  Cycle values come from matrix powers rather than from SCCs or
Karp's algorithm, so agreement with the main modules is meaningful.

Everything here is exponential in the enumeration bounds and meant for tests,
refutation modes and debugging.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from .core import NEG_INF, POS_INF, Automaton, LassoWord, UnsupportedValueFunctionError, ValueFunction

VF = ValueFunction


def enumerate_lassos(alphabet, stem_bound, period_bound):
    """Every (u, v) with |u| <= stem_bound, 1 <= |v| <= period_bound.

    Ordered by total length, then lexicographically by (u, v) in alphabet order.
    """
    if stem_bound < 0 or period_bound < 1:
        raise ValueError("need stem_bound >= 0 and period_bound >= 1")
    stems = _words(alphabet, 0, stem_bound)
    periods = _words(alphabet, 1, period_bound)
    pairs = sorted(((len(u) + len(v), u, v) for u in stems for v in periods))
    alphabet = tuple(alphabet)
    return [LassoWord(tuple(alphabet[i] for i in u), tuple(alphabet[i] for i in v)) for _, u, v in pairs]


def _words(alphabet, lo, hi):
    k = len(alphabet)
    out = []
    for n in range(lo, hi + 1):
        out.extend(itertools.product(range(k), repeat=n))
    return out


# ---------------------------------------------------------------------------
# semiring matrices; None means "no path"


def _times(kind, x, y):
    if kind == "bottleneck":
        return min(x, y)
    if kind == "maxmax":
        return max(x, y)
    return x + y


def _semiring(f):
    if f in (VF.Inf, VF.LimInf):
        return "bottleneck"
    if f in (VF.Sup, VF.LimSup):
        return "maxmax"
    return "maxsum"


def _better(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return max(x, y)


def _matmul(X, Y, kind):
    n = len(X)
    Z = [[None] * n for _ in range(n)]
    for i in range(n):
        Xi = X[i]
        for k in range(n):
            a = Xi[k]
            if a is None:
                continue
            Yk = Y[k]
            Zi = Z[i]
            for j in range(n):
                b = Yk[j]
                if b is not None:
                    Zi[j] = _better(Zi[j], _times(kind, a, b))
    return Z


def _vecmul(x, Y, kind):
    n = len(x)
    z = [None] * n
    for k in range(n):
        if x[k] is None:
            continue
        for j in range(n):
            if Y[k][j] is not None:
                z[j] = _better(z[j], _times(kind, x[k], Y[k][j]))
    return z


def _letter_matrix(A: Automaton, letter):
    n = len(A.states)
    M = [[None] * n for _ in range(n)]
    for t in A.transitions:
        if letter is None or t.letter == letter:
            i, j = A.state_index(t.source), A.state_index(t.target)
            M[i][j] = _better(M[i][j], t.weight)
    return M


def _closure(M):
    """Reflexive-transitive reachability of the non-None pattern."""
    n = len(M)
    R = [[i == j or M[i][j] is not None for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if R[i][k]:
                Rk = R[k]
                Ri = R[i]
                for j in range(n):
                    if Rk[j]:
                        Ri[j] = True
    return R


def _alive(M, t):
    """Greatest set S with: every member has an edge of value >= t into S."""
    n = len(M)
    S = set(range(n))
    changed = True
    while changed:
        changed = False
        for p in list(S):
            if not any(M[p][q] is not None and M[p][q] >= t and q in S for q in S):
                S.discard(p)
                changed = True
    return S


def _path_values(M, f, scale=1):
    """Per start vertex, the best f-value of an infinite path of blocks.

    M is a block matrix in f's semiring; scale is the number of letters per
    block (only used for averages).
    """
    n = len(M)
    R = _closure(M)
    values = sorted({x for row in M for x in row if x is not None})
    out = [None] * n
    if f in (VF.Inf, VF.LimInf):
        for t in values:
            S = _alive(M, t)
            for p in range(n):
                if f is VF.Inf:
                    hit = p in S
                else:
                    hit = any(R[p][x] for x in S)
                if hit:
                    out[p] = t
        return out
    if f is VF.Sup:
        for p in range(n):
            out[p] = max((M[x][y] for x in range(n) if R[p][x] for y in range(n) if M[x][y] is not None),
                         default=None)
        return out
    if f is VF.LimSup:
        for p in range(n):
            out[p] = max((M[x][y] for x in range(n) if R[p][x] for y in range(n)
                          if M[x][y] is not None and R[y][x]), default=None)
        return out
    # averages: best closed walk of length k <= n through each vertex
    diag = [None] * n
    P = M
    for k in range(1, n + 1):
        for x in range(n):
            if P[x][x] is not None:
                diag[x] = _better(diag[x], Fraction(P[x][x]) / (k * scale))
        if k < n:
            P = _matmul(P, M, "maxsum")
    for p in range(n):
        out[p] = max((diag[x] for x in range(n) if R[p][x] and diag[x] is not None), default=None)
    return out


def _stem_start(A: Automaton, f):
    n = len(A.states)
    v = [None] * n
    i0 = A.state_index(A.initial)
    if f is VF.Inf:
        v[i0] = POS_INF
    elif f is VF.Sup:
        v[i0] = NEG_INF
    else:
        v[i0] = 0
    return v


def _stem_kind(f):
    if f is VF.Inf:
        return "bottleneck"
    if f is VF.Sup:
        return "maxmax"
    return "reach"


def _stem_step(v, L, f):
    kind = _stem_kind(f)
    if kind == "reach":
        n = len(v)
        return [0 if any(v[k] is not None and L[k][j] is not None for k in range(n)) else None
                for j in range(n)]
    return _vecmul(v, L, kind)


def _combine(f, stat, tail):
    if f is VF.Inf:
        return min(stat, tail)
    if f is VF.Sup:
        return max(stat, tail)
    return tail


def _value(f, stem_vec, period_vals):
    best = None
    for s, p in zip(stem_vec, period_vals):
        if s is not None and p is not None:
            best = _better(best, _combine(f, s, p))
    return best


def _block(A, f, letters):
    kind = _semiring(f)
    mats = [_letter_matrix(A, a) for a in letters]
    M = mats[0]
    for X in mats[1:]:
        M = _matmul(M, X, kind)
    return M


def lasso_value(A: Automaton, f: VF, w: LassoWord):
    """A(u v^omega) by block summaries."""
    A.check_word(w.stem + w.period)
    v = _stem_start(A, f)
    for a in w.stem:
        v = _stem_step(v, _letter_matrix(A, a), f)
    P = _path_values(_block(A, f, w.period), f, len(w.period))
    return _value(f, v, P)


class _Table:
    """All stem vectors and period summaries up to the bounds, for one automaton."""

    def __init__(self, A: Automaton, f: VF, stem_bound, period_bound):
        self.A, self.f = A, f
        letters = A.alphabet
        kind = _semiring(f)
        L = {a: _letter_matrix(A, a) for a in letters}
        self.stems = [()]
        self.stem_vecs = [_stem_start(A, f)]
        frontier = [((), self.stem_vecs[0])]
        for _ in range(stem_bound):
            nxt = []
            for u, vec in frontier:
                for i, a in enumerate(letters):
                    nv = _stem_step(vec, L[a], f)
                    nxt.append((u + (i,), nv))
            self.stems.extend(u for u, _ in nxt)
            self.stem_vecs.extend(v for _, v in nxt)
            frontier = nxt
        self.periods = []
        self.period_vals = []
        frontier = [((i,), L[a]) for i, a in enumerate(letters)]
        for length in range(1, period_bound + 1):
            for v, M in frontier:
                self.periods.append(v)
                self.period_vals.append(_path_values(M, f, length))
            if length < period_bound:
                frontier = [(v + (i,), _matmul(M, L[a], kind)) for v, M in frontier for i, a in enumerate(letters)]

    def values(self):
        """Matrix (stems x periods) of exact values as Python objects."""
        return [[_value(self.f, s, p) for p in self.period_vals] for s in self.stem_vecs]

    def ranked(self, ranks):
        """Value matrix encoded as order-preserving integer ranks (numpy)."""
        n = len(self.A.states)
        f = self.f
        S = np.full((len(self.stems), n), -1, dtype=np.int64)
        present = np.zeros((len(self.stems), n), dtype=bool)
        for i, vec in enumerate(self.stem_vecs):
            for q, x in enumerate(vec):
                if x is not None:
                    present[i, q] = True
                    S[i, q] = ranks[x] if f in (VF.Inf, VF.Sup) else 0
        P = np.full((len(self.periods), n), -1, dtype=np.int64)
        for j, vals in enumerate(self.period_vals):
            for q, x in enumerate(vals):
                if x is not None:
                    P[j, q] = ranks[x]
        out = np.full((len(self.stems), len(self.periods)), -1, dtype=np.int64)
        for q in range(n):
            col = P[None, :, q]
            if f is VF.Inf:
                cand = np.minimum(S[:, q, None], col)
            elif f is VF.Sup:
                cand = np.maximum(S[:, q, None], col)
            else:
                cand = np.broadcast_to(col, out.shape)
            cand = np.where(present[:, q, None] & (col >= 0), cand, -1)
            out = np.maximum(out, cand)
        return out

    def raw_values(self):
        vals = set()
        for vec in self.stem_vecs:
            vals.update(x for x in vec if x is not None)
        for vec in self.period_vals:
            vals.update(x for x in vec if x is not None)
        return vals


def _ranking(*tables):
    vals = set()
    for t in tables:
        vals |= t.raw_values()
    ordered = sorted(vals)
    return ordered, {x: i for i, x in enumerate(ordered)}


def _order_keys(table):
    su = sorted(range(len(table.stems)), key=lambda i: table.stems[i])
    sv = sorted(range(len(table.periods)), key=lambda j: table.periods[j])
    ru = np.empty(len(su), dtype=np.int64)
    rv = np.empty(len(sv), dtype=np.int64)
    ru[su] = np.arange(len(su))
    rv[sv] = np.arange(len(sv))
    lu = np.array([len(u) for u in table.stems])
    lv = np.array([len(v) for v in table.periods])
    return lu, lv, ru, rv


def _first(table, mask):
    """First lasso (enumeration order) among the True entries of mask, or None."""
    idx = np.argwhere(mask)
    if len(idx) == 0:
        return None
    lu, lv, ru, rv = _order_keys(table)
    i, j = idx[:, 0], idx[:, 1]
    order = np.lexsort((rv[j], ru[i], lu[i] + lv[j]))
    i, j = idx[order[0]]
    alphabet = table.A.alphabet
    return LassoWord(tuple(alphabet[k] for k in table.stems[i]), tuple(alphabet[k] for k in table.periods[j]))


def _extreme(A, f, stem_bound, period_bound, pick):
    table = _Table(A, f, stem_bound, period_bound)
    ordered, ranks = _ranking(table)
    R = table.ranked(ranks)
    target = pick(R)
    return ordered[target], _first(table, R == target)


def brute_force_top(A: Automaton, f: VF, stem_bound=None, period_bound=None):
    """(max value over enumerated lassos, first lasso attaining it).

    Exact top value once both bounds are at least |Q|.
    """
    n = len(A.states)
    return _extreme(A, f, n if stem_bound is None else stem_bound, n if period_bound is None else period_bound,
                    lambda R: R.max())


def brute_force_bottom(A: Automaton, f: VF, stem_bound=4, period_bound=4):
    """(min value over enumerated lassos, first lasso attaining it); an upper bound on the bottom value."""
    return _extreme(A, f, stem_bound, period_bound, lambda R: R.min())


def brute_force_inclusion_refute(A: Automaton, B: Automaton, f: VF, stem_bound=4, period_bound=4, g=None):
    """First enumerated lasso w with A(w) > B(w) (B read with g, default f), or None."""
    if set(A.alphabet) != set(B.alphabet):
        raise ValueError("automata over different alphabets")
    B = _realphabet(B, A.alphabet)
    ta = _Table(A, f, stem_bound, period_bound)
    tb = _Table(B, f if g is None else g, stem_bound, period_bound)
    _, ranks = _ranking(ta, tb)
    return _first(ta, ta.ranked(ranks) > tb.ranked(ranks))


def lasso_sweep(A: Automaton, f: VF, stem_bound, period_bound, predicate):
    """First enumerated lasso whose exact value satisfies predicate, or None."""
    table = _Table(A, f, stem_bound, period_bound)
    ordered, ranks = _ranking(table)
    R = table.ranked(ranks)
    good = np.array([bool(predicate(x)) for x in ordered] + [False])
    return _first(table, good[R])


def compare_sweep(A: Automaton, f: VF, B: Automaton, g: VF, stem_bound, period_bound, relation):
    """First enumerated lasso w with relation(rankA, rankB) true (numpy-vectorised)."""
    B = _realphabet(B, A.alphabet)
    ta = _Table(A, f, stem_bound, period_bound)
    tb = _Table(B, g, stem_bound, period_bound)
    _, ranks = _ranking(ta, tb)
    return _first(ta, relation(ta.ranked(ranks), tb.ranked(ranks)))


class LassoSweep:
    """Exact values of several (automaton, value function) pairs on every enumerated lasso.

    ``ranks[k]`` is a (stems x periods) integer matrix; equal ranks mean equal
    values across all pairs, and the order of ranks is the order of values.
    """

    def __init__(self, pairs, stem_bound, period_bound):
        pairs = list(pairs)
        alphabet = pairs[0][0].alphabet
        for B, _ in pairs:
            if set(B.alphabet) != set(alphabet):
                raise ValueError("automata over different alphabets")
        self.tables = [_Table(_realphabet(B, alphabet), g, stem_bound, period_bound) for B, g in pairs]
        self.ordered, index = _ranking(*self.tables)
        self.ranks = [t.ranked(index) for t in self.tables]

    def __len__(self):
        return self.ranks[0].size

    def value(self, k, i, j):
        return self.ordered[self.ranks[k][i, j]]

    def first(self, mask):
        """First lasso in enumeration order where mask holds, or None."""
        return _first(self.tables[0], mask)


def _realphabet(B, alphabet):
    if tuple(B.alphabet) == tuple(alphabet):
        return B
    return Automaton(B.transitions, initial=B.initial, alphabet=alphabet, states=B.states)


# ---------------------------------------------------------------------------
# safety closure on a lasso, straight from inf over prefixes of sup over continuations


def oracle_caps(A: Automaton, f: VF):
    """Per state, the supremum of f over runs starting there."""
    return dict(zip(A.states, _path_values(_letter_matrix(A, None), f)))


def prefix_best(A: Automaton, f: VF, prefix, caps=None):
    """sup over continuations w' of A(prefix w')."""
    caps = oracle_caps(A, f) if caps is None else caps
    config = _initial_config(A, f)
    for a in prefix:
        config = _config_step(A, f, config, a)
    return _config_best(A, f, config, caps)


def _initial_config(A, f):
    stat = {VF.Inf: POS_INF, VF.Sup: NEG_INF}.get(f, 0)
    return {A.initial: stat}


def _config_step(A, f, config, a):
    out = {}
    for q, stat in config.items():
        for x, p in A.successors(q, a):
            if f is VF.Inf:
                s = min(stat, x)
            elif f is VF.Sup:
                s = max(stat, x)
            else:
                s = 0
            if p not in out or s > out[p]:
                out[p] = s
    return out


def _config_best(A, f, config, caps):
    return max(_combine(f, stat, caps[q]) for q, stat in config.items())


def closure_value_on_lasso(A: Automaton, f: VF, w: LassoWord):
    """inf over prefixes p of w of sup over w' of A(p w')."""
    A.check_word(w.stem + w.period)
    caps = oracle_caps(A, f)
    config = _initial_config(A, f)
    best = _config_best(A, f, config, caps)
    seen = set()
    word = w.stem + w.period
    k, loop = len(word), len(w.stem)
    pos = 0
    while True:
        config = _config_step(A, f, config, word[pos])
        pos = pos + 1 if pos + 1 < k else loop
        best = min(best, _config_best(A, f, config, caps))
        key = (pos, frozenset(config.items()))
        if key in seen:
            return best
        seen.add(key)


# ---------------------------------------------------------------------------
# random instances


def random_automaton(seed, n_states=4, letters=("a", "b"), weights=(0, 1, 2), max_successors=2,
                     deterministic=False) -> Automaton:
    """Seeded random total automaton with states s0..s{n-1}, initial s0."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    states = [f"s{i}" for i in range(n_states)]
    ts = []
    for q in states:
        for a in letters:
            k = 1 if deterministic else rng.randint(1, max_successors)
            for _ in range(k):
                ts.append((q, a, Fraction(rng.choice(weights)), rng.choice(states)))
    A = Automaton(ts, initial="s0", alphabet=letters, states=states)
    return A


__all__ = [
    "LassoSweep",
    "brute_force_bottom",
    "brute_force_inclusion_refute",
    "brute_force_top",
    "closure_value_on_lasso",
    "enumerate_lassos",
    "lasso_sweep",
    "lasso_value",
    "oracle_caps",
    "prefix_best",
    "random_automaton",
]
