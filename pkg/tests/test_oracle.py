from fractions import Fraction

import pytest

from conftest import one_state
from qautomata import Automaton, LassoWord, ValueFunction
from qautomata.oracle import (brute_force_bottom, brute_force_inclusion_refute, brute_force_top,
                              closure_value_on_lasso, enumerate_lassos, lasso_value, prefix_best, random_automaton)

VF = ValueFunction


@pytest.mark.parametrize("alphabet, sb, pb, count", [(("a", "b"), 0, 1, 2), (("a", "b"), 1, 1, 6),
                                                     (("a",), 2, 2, 6), (("a", "b"), 8, 8, 511 * 510)])
def test_enumeration_size(alphabet, sb, pb, count):
    ws = enumerate_lassos(alphabet, sb, pb)
    assert len(ws) == count
    if count < 10000:
        assert len(set(ws)) == count


def test_enumeration_order():
    ws = enumerate_lassos(("a", "b"), 1, 2)
    sizes = [len(w.stem) + len(w.period) for w in ws]
    assert sizes == sorted(sizes)
    assert ws[:2] == [LassoWord.of("", "a"), LassoWord.of("", "b")]


def test_ex_a_values(ex_a):
    assert brute_force_top(ex_a, VF.LimInfAvg, 4, 4)[0] == 6
    assert lasso_value(ex_a, VF.LimInfAvg, LassoWord.of("", "lo")) == 2
    # the committed bottom value of ex_a under LimSup
    assert brute_force_bottom(ex_a, VF.LimSup) == (2, LassoWord.of("", "lo"))


@pytest.mark.parametrize("stem, period, expected", [("", "lo", 4), ("", "hi", 6), ("lo", "hi", 4), ("hi", "lo", 6)])
def test_closure_value_ex_a(ex_a, stem, period, expected):
    assert closure_value_on_lasso(ex_a, VF.LimInfAvg, LassoWord.of(stem, period)) == expected


def test_closure_value_sup():
    A = Automaton([("s", "a", 0, "s"), ("s", "b", 1, "t"), ("t", "a", 0, "t"), ("t", "b", 0, "t")])
    assert closure_value_on_lasso(A, VF.Sup, LassoWord.of("a b", "a")) == 1
    assert closure_value_on_lasso(A, VF.Sup, LassoWord.of("", "a")) == 1


def test_prefix_best(ex_a):
    assert prefix_best(ex_a, VF.LimInfAvg, ()) == 6
    assert prefix_best(ex_a, VF.LimInfAvg, ("lo",)) == 4


def test_constant_everywhere():
    A = one_state({"a": 5, "b": 5})
    for f in VF:
        for w in enumerate_lassos(A.alphabet, 2, 2):
            assert closure_value_on_lasso(A, f, w) == 5 == lasso_value(A, f, w)


def test_inclusion_refuter():
    X = one_state({"a": 1, "b": 0})
    Y = one_state({"a": 1, "b": 1})
    assert brute_force_inclusion_refute(Y, X, VF.LimInfAvg, 2, 2) == LassoWord.of("", "b")
    assert brute_force_inclusion_refute(X, Y, VF.LimInfAvg, 2, 2) is None
    assert brute_force_inclusion_refute(X, X, VF.Sup, 3, 3) is None


def test_closure_bounds_from_above(ex_a, ex_b):
    # ex_a never exceeds its closure read as an average automaton
    assert brute_force_inclusion_refute(ex_a, ex_b, VF.LimInfAvg, 3, 3) is None


def test_random_automaton_replayable():
    A = random_automaton(7)
    assert A == random_automaton(7)
    assert A.states == ("s0", "s1", "s2", "s3") and A.initial == "s0"
    assert random_automaton(7, deterministic=True).is_deterministic()


def test_lasso_value_is_exact_rational():
    A = Automaton([("s", "a", 1, "s"), ("s", "b", 2, "s")])
    assert lasso_value(A, VF.LimInfAvg, LassoWord.of("", "a a b")) == Fraction(4, 3)
