from pathlib import Path

import pytest

from qautomata import Automaton, load_automaton

HERE = Path(__file__).parent


def one_state(weights):
    """One-state automaton with a self-loop per letter, e.g. {"a": 1, "b": 0}."""
    return Automaton([("s", a, x, "s") for a, x in weights.items()], initial="s")


@pytest.fixture
def ex_a():
    return load_automaton(HERE / "example_A.txt")


@pytest.fixture
def ex_b():
    return load_automaton(HERE / "example_B.txt")


@pytest.fixture
def ex_a_path():
    return str(HERE / "example_A.txt")


@pytest.fixture
def ex_b_path():
    return str(HERE / "example_B.txt")


@pytest.fixture
def ab10():
    return one_state({"a": 1, "b": 0})
