"""Acceptance checks, one per criterion.

Run under pytest, or directly (``python tests/test_acceptance.py``) for a
one-line PASS/FAIL summary per criterion.
"""

import io
import random
import sys
from pathlib import Path

import numpy as np
import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from qautomata import (LassoWord, ValueFunction, decompose, eval_lasso, is_included, is_live, is_non_empty,  # noqa: E402
                       is_safe, load_automaton, safety_closure, top_value)
from qautomata.buchi import buchi_member, cut_buchi  # noqa: E402
from qautomata.cli import run  # noqa: E402
from qautomata.graph import bottom_value_deterministic, dual  # noqa: E402
from qautomata.monitor import create_monitor  # noqa: E402
from qautomata.oracle import (LassoSweep, brute_force_inclusion_refute, closure_value_on_lasso,  # noqa: E402
                              enumerate_lassos, prefix_best, random_automaton)

VF = ValueFunction
BASIC = [VF.Inf, VF.Sup, VF.LimInf, VF.LimSup]
PI = [VF.LimInf, VF.LimSup, VF.LimInfAvg, VF.LimSupAvg]
W = LassoWord.of

CRITERIA = {}


def criterion(n, title):
    def register(fn):
        CRITERIA[n] = (title, fn)
        return fn
    return register


def ex_a():
    return load_automaton(HERE / "example_A.txt")


def pi_automata():
    """the running example plus 50 seeded random prefix-independent automata."""
    out = [(ex_a(), VF.LimInfAvg)]
    for i in range(50):
        A = random_automaton(i, n_states=1 + i % 4, max_successors=2 + i % 2)
        out.append((A, PI[i % 4]))
    return out


@criterion(1, "running example golden values")
def check_running_example():
    A = ex_a()
    f = VF.LimInfAvg
    top, w = top_value(A, f)
    assert top == 6 and eval_lasso(A, f, w) == 6 and w == W("hi", "hi"), (top, w)
    assert eval_lasso(A, f, W("", "lo")) == 2
    S = safety_closure(A, f)
    assert eval_lasso(S, VF.Inf, W("", "lo")) == 4 == closure_value_on_lasso(A, f, W("", "lo"))
    res = is_safe(A, f, refute_only=True)
    pair = (eval_lasso(S, VF.Inf, res.witness), eval_lasso(A, f, res.witness))
    assert res.holds is False and pair == (4, 2), (res, pair)
    return f"top 6 at {w}; A(lo^w)=2; closure(lo^w)=4; not safe, witness {res.witness} with 4 vs 2"


@criterion(2, "nonemptiness coherence")
def check_nonempty():
    A = ex_a()
    yes = is_non_empty(A, VF.LimInfAvg, 5)
    assert yes.holds and eval_lasso(A, VF.LimInfAvg, yes.witness) >= 5
    assert is_non_empty(A, VF.LimInfAvg, 7).holds is False
    return "threshold 5 -> true (witness value 6), threshold 7 -> false (top value 6)"


@criterion(3, "decomposition identity")
def check_decomposition():
    count = 0
    for A, f in pi_automata():
        d = decompose(A, f)
        sweep = LassoSweep([(A, f), (d.safety_part, VF.Inf), (d.liveness_part, f)], 4, 4)
        RA, RS, RC = sweep.ranks
        bad = sweep.first(np.minimum(RS, RC) != RA)
        assert bad is None, f"identity fails on {bad}"
        assert is_live(d.liveness_part, f).holds
        assert is_safe(d.safety_part, VF.Inf).holds
        if f.limit_average:
            for w in enumerate_lassos(A.alphabet, 4, 4):
                assert closure_value_on_lasso(d.safety_part, VF.Inf, w) == eval_lasso(d.safety_part, VF.Inf, w)
        count += len(sweep)
    return f"51 automata, {count} lasso evaluations, parts live and safe"


@criterion(4, "closure laws")
def check_closure_laws():
    cases = [(ex_a(), f) for f in VF] + [(A, list(VF)[i % 6]) for i, (A, _) in enumerate(pi_automata()[1:])]
    for A, f in cases:
        S = safety_closure(A, f)
        sweep = LassoSweep([(A, f), (S, VF.Inf)], 4, 4)
        assert (sweep.ranks[1] >= sweep.ranks[0]).all(), "closure below the automaton"
        for w in enumerate_lassos(A.alphabet, 4, 4):
            assert closure_value_on_lasso(S, VF.Inf, w) == eval_lasso(S, VF.Inf, w), f"not idempotent on {w}"
        for w in enumerate_lassos(A.alphabet, 3, 3):
            assert eval_lasso(S, VF.Inf, w) == closure_value_on_lasso(A, f, w)
    for i in range(20):
        X = random_automaton(300 + i, n_states=1 + i % 4)
        assert safety_closure(X, VF.Inf) == X
    return f"{len(cases)} automata: bounds from above, idempotent, Inf closure is the identity"


@criterion(5, "differential inclusion")
def check_inclusion():
    negative = 0
    for i in range(200):
        A = random_automaton(i, n_states=1 + i % 4)
        B = random_automaton(10_000 + i, n_states=1 + (i // 4) % 4)
        f = BASIC[i % 4]
        res = is_included(A, B, f)
        refuter = brute_force_inclusion_refute(A, B, f, 8, 8)
        assert res.holds == (refuter is None), (i, f, res, refuter)
        if not res.holds:
            negative += 1
            assert eval_lasso(A, f, res.witness) > eval_lasso(B, f, res.witness)
    return f"200 pairs agree with the 8/8 refuter ({negative} not included, all witnesses valid)"


@criterion(6, "deterministic limit-average inclusion")
def check_average_inclusion():
    negative = 0
    for i in range(100):
        A = random_automaton(20_000 + i, n_states=1 + i % 4, deterministic=True)
        B = random_automaton(30_000 + i, n_states=1 + (i // 4) % 4, deterministic=True)
        f = [VF.LimInfAvg, VF.LimSupAvg][i % 2]
        res = is_included(A, B, f)
        refuter = brute_force_inclusion_refute(A, B, f, 8, 8)
        assert res.holds == (refuter is None), (i, res, refuter)
        if not res.holds:
            negative += 1
            assert eval_lasso(A, f, res.witness) - eval_lasso(B, f, res.witness) > 0
    return f"100 pairs agree with the 8/8 refuter ({negative} not included, positive difference means)"


@criterion(7, "top/bottom duality")
def check_duality():
    for i in range(100):
        A = random_automaton(40_000 + i, n_states=1 + i % 5, weights=(-1, 0, 1, 2), deterministic=True)
        for f in VF:
            bottom, w = bottom_value_deterministic(A, f)
            B, g = dual(A, f)
            top, wd = top_value(B, g)
            assert bottom == -top
            assert eval_lasso(A, f, w) == bottom and eval_lasso(B, g, wd) == top
    return "100 deterministic automata x 6 value functions"


@criterion(8, "cut correctness")
def check_cuts():
    checks = 0
    for i in range(50):
        A = random_automaton(50_000 + i, n_states=1 + i % 4)
        lassos = enumerate_lassos(A.alphabet, 3, 3)
        for f in BASIC:
            values = [eval_lasso(A, f, w) for w in lassos]
            for v in A.weights():
                B = cut_buchi(A, f, v)
                for w, x in zip(lassos, values):
                    assert buchi_member(B, w) == (x >= v), (i, f, v, w)
                    checks += 1
    return f"{checks} membership checks"


@criterion(9, "monitor laws")
def check_monitor():
    rng = random.Random(9)
    for i in range(1000):
        det = i % 2 == 0
        A = random_automaton(60_000 + i // 10, n_states=1 + (i // 10) % 4, deterministic=det)
        f = list(VF)[(i // 2) % 6] if det else PI[(i // 2) % 4]
        m = create_monitor(A, f)
        prev = m.report()
        assert prev.highest == top_value(A, f)[0]
        letters = [rng.choice(A.alphabet) for _ in range(12)]
        w = LassoWord(letters, [rng.choice(A.alphabet) for _ in range(rng.randint(1, 3))])
        value = eval_lasso(A, f, w)
        for n, a in enumerate(letters, start=1):
            r = m.step(a)
            assert r.highest <= prev.highest and value <= r.highest
            if det:
                assert prev.lowest <= r.lowest <= value
            if n in (1, 6, 12):
                assert r.highest == prefix_best(A, f, letters[:n])
            prev = r
    return "1000 sequences of 12 letters: monotone bounds, sandwich, initial highest is the top value"


@criterion(10, "undecidability gating")
def check_gating():
    import tempfile
    with tempfile.TemporaryDirectory() as tmp:
        paths = [str(HERE / "example_A.txt")]
        for i in range(10):
            A = random_automaton(70_000 + i, n_states=2 + i % 3, letters=("hi", "lo"))
            if A.is_deterministic():
                continue
            p = Path(tmp) / f"r{i}.txt"
            p.write_text(str(A))
            paths.append(str(p))
        calls = 0
        for p in paths:
            for f in ("LimInfAvg", "LimSupAvg"):
                for argv in (["universal", p, "--val", f, "--threshold", "1"],
                             ["include", p, paths[0], "--val", f],
                             ["equivalent", paths[0], p, "--val", f]):
                    out, err = io.StringIO(), io.StringIO()
                    code = run(argv, stdout=out, stderr=err)
                    assert code == 3 and out.getvalue() == "", (argv, code, out.getvalue())
                    assert "undecidable" in err.getvalue()
                    calls += 1
    return f"{calls} requests exit with code 3 and no answer"


def run_criterion(n):
    title, fn = CRITERIA[n]
    try:
        detail = fn()
        return True, f"criterion {n:2d} PASS  {title}: {detail}"
    except AssertionError as e:
        return False, f"criterion {n:2d} FAIL  {title}: {e}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = run_criterion(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
