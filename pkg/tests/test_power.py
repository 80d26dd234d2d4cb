"""
幂自动机测试
"""

import pytest

from core.automaton.power import PowerAutomaton, path_weights, path_word, power
from core.errors import SizeBoundExceededError


def test_state_count_and_initial_vectors(W0):
    P = power(W0, 2)
    assert P.state_count() == 9
    assert len(P.initial_vectors()) == 9
    assert len(list(P.states())) == 9


def test_successors_are_synchronous(W0):
    P = PowerAutomaton(W0, 2)
    edges = P.successors(("q_a", "q_b"))
    assert edges
    for edge in edges:
        assert edge.source == ("q_a", "q_b")
        assert all(t.letter == edge.letter for t in edge.transitions)
    # q_a 读 a 有两个后继，q_b 读 a 有一个
    assert sum(1 for e in edges if e.letter == "a") == 2


def test_dead_coordinate_has_no_successor(W0):
    assert PowerAutomaton(W0, 2).successors(("q_f", "q_a")) == ()


def test_path_helpers(W0):
    P = PowerAutomaton(W0, 2)
    first = P.successors(("q_a", "q_b"))[0]
    path = [first]
    assert path_word(path) == (first.letter,)
    assert len(path_weights(W0, path, 2)) == 2


def test_cap_and_order(W0):
    with pytest.raises(SizeBoundExceededError):
        PowerAutomaton(W0, 3, cap=10)
    with pytest.raises(ValueError):
        PowerAutomaton(W0, 0)
