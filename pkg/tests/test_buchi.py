import pytest

from conftest import one_state
from qautomata import (AlphabetMismatchError, BuchiAutomaton, LassoWord, UnsupportedValueFunctionError,
                       ValueFunction, buchi_included, buchi_member, buchi_universal, cut_buchi, eval_lasso)
from qautomata.buchi import _Profiles
from qautomata.oracle import enumerate_lassos, random_automaton

VF = ValueFunction
BASIC = [VF.Inf, VF.Sup, VF.LimInf, VF.LimSup]
W = LassoWord.of


def only(letter, alphabet=("a", "b")):
    """Accepts exactly letter^omega."""
    ts = {("s", letter, True, "s")} | {("s", x, False, "d") for x in alphabet if x != letter}
    ts |= {("d", x, False, "d") for x in alphabet}
    return BuchiAutomaton(alphabet, ("s", "d"), {"s"}, ts)


def test_validation():
    with pytest.raises(ValueError):
        BuchiAutomaton(("a",), ("s",), set(), set())
    with pytest.raises(ValueError):
        BuchiAutomaton(("a",), ("s",), {"s"}, {("s", "a", True, "t")})


def test_member_trivial():
    U = BuchiAutomaton.universal(("a", "b"))
    N = BuchiAutomaton(("a", "b"), ("s",), {"s"}, {("s", x, False, "s") for x in "ab"})
    for w in enumerate_lassos(("a", "b"), 2, 2):
        assert buchi_member(U, w)
        assert not buchi_member(N, w)


def test_sup_cut(ab10):
    B = cut_buchi(ab10, VF.Sup, 1)
    assert buchi_member(B, W("b b", "a"))
    assert buchi_member(B, W("b a", "b"))
    assert not buchi_member(B, W("", "b"))


def test_inf_cut_at_min_weight_is_universal(ex_a):
    assert buchi_universal(cut_buchi(ex_a, VF.Inf, 2)).holds


def test_limsup_cut_ex_a(ex_a):
    B = cut_buchi(ex_a, VF.LimSup, 6)
    assert buchi_member(B, W("", "hi"))
    assert buchi_member(B, W("hi", "hi"))
    assert not buchi_member(B, W("", "lo"))


def test_averages_have_no_cut(ex_a):
    with pytest.raises(UnsupportedValueFunctionError):
        cut_buchi(ex_a, VF.LimInfAvg, 3)


def test_inclusion_small():
    U = BuchiAutomaton.universal(("a", "b"))
    assert buchi_included(only("a"), U).holds
    assert buchi_included(U, U).holds
    res = buchi_included(U, only("a"))
    assert not res.holds and "b" in res.witness.period + res.witness.stem
    assert res.witness == W("", "b")


def test_universal_counterexample():
    B = BuchiAutomaton(("a", "b"), ("s",), {"s"}, {("s", "a", True, "s"), ("s", "b", False, "s")})
    res = buchi_universal(B)
    assert not res.holds
    assert res.witness == W("", "b")


def test_ex_b_inf_cut_universal(ex_b):
    assert buchi_universal(cut_buchi(ex_b, VF.Inf, 4)).holds
    assert not buchi_universal(cut_buchi(ex_b, VF.Inf, 6)).holds


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatchError):
        buchi_included(BuchiAutomaton.universal(("a",)), BuchiAutomaton.universal(("a", "b")))


def test_profile_composition_associative():
    A = random_automaton(11, n_states=3)
    P = _Profiles(cut_buchi(A, VF.LimSup, 1))
    x, y, z = P.letter["a"], P.letter["b"], P.compose(P.letter["a"], P.letter["b"])
    assert P.compose(P.compose(x, y), z) == P.compose(x, P.compose(y, z))
    e = P.idempotent_power(z)
    assert P.compose(e, e) == e


@pytest.mark.parametrize("seed", range(24))
def test_cut_matches_eval(seed):
    A = random_automaton(seed, n_states=1 + seed % 4)
    f = BASIC[seed % 4]
    for v in A.weights():
        B = cut_buchi(A, f, v)
        for w in enumerate_lassos(A.alphabet, 2, 2):
            assert buchi_member(B, w) == (eval_lasso(A, f, w) >= v)


@pytest.mark.parametrize("seed", range(16))
def test_cut_monotone(seed):
    A = random_automaton(seed, n_states=3)
    f = BASIC[seed % 4]
    ws = A.weights()
    for lo, hi in zip(ws, ws[1:]):
        assert buchi_included(cut_buchi(A, f, hi), cut_buchi(A, f, lo)).holds


@pytest.mark.parametrize("seed", range(24))
def test_inclusion_matches_sweep(seed):
    A = random_automaton(seed, n_states=1 + seed % 4)
    B = random_automaton(500 + seed, n_states=1 + (seed // 4) % 3)
    f = BASIC[seed % 4]
    for v in A.weights():
        X, Y = cut_buchi(A, f, v), cut_buchi(B, f, v)
        res = buchi_included(X, Y)
        refuting = [w for w in enumerate_lassos(A.alphabet, 3, 3) if buchi_member(X, w) and not buchi_member(Y, w)]
        assert res.holds == (not refuting)
        if not res.holds:
            assert buchi_member(X, res.witness) and not buchi_member(Y, res.witness)
