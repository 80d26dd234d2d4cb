"""
加权自动机模型与运算测试
"""

import pytest

from core.automaton.model import WeightedAutomaton, empty_automaton
from core.automaton.operations import (
    concatenate,
    connected_components,
    enumerate_runs,
    equiv_up_to,
    evaluate,
    evaluate_all,
    find_distinguishing_word,
    is_structurally_k_sequential,
    is_structurally_sequential,
    kleene_separator,
    mw_constant,
    out_max,
    restrict_initial,
    sequential_components,
    trim,
    union,
    union_many,
    valuedness_estimate,
)
from core.errors import (
    AlphabetMismatchError,
    InvalidAutomatonError,
    UnknownLetterError,
)


def values(outputs):
    return sorted(v.value for v in outputs)


class TestModel:
    def test_undeclared_state_rejected(self, z):
        with pytest.raises(InvalidAutomatonError):
            WeightedAutomaton.build(z, ["a"], ["p"], [("q", z.identity)], [], [])

    def test_letter_outside_alphabet_rejected(self, z):
        with pytest.raises(InvalidAutomatonError):
            WeightedAutomaton.build(
                z, ["a"], ["p"], [], [], [("p", "b", z.identity, "p")]
            )

    def test_equality_ignores_build_order(self, W0):
        shuffled = W0.replace(transitions=list(reversed(W0.transition_list)))
        assert shuffled == W0
        assert hash(shuffled) == hash(W0)

    def test_empty_automaton(self, z):
        empty = empty_automaton(z, ["a"])
        assert empty.is_empty()
        assert evaluate(empty, ("a",)) == frozenset()


class TestEvaluate:
    def test_f_last(self, W0):
        assert values(evaluate(W0, ())) == [0]
        assert values(evaluate(W0, ("a", "b"))) == [1]
        assert values(evaluate(W0, ("a", "a"))) == [2]
        assert values(evaluate(W0, ("a", "a", "b"))) == [1]
        assert values(evaluate(W0, ("b", "a", "b", "b"))) == [3]

    def test_unknown_letter(self, W0):
        with pytest.raises(UnknownLetterError):
            evaluate(W0, ("c",))

    def test_concatenation(self, W1):
        assert values(evaluate(W1, ("a", "b", "#", "a", "a"))) == [3]
        assert evaluate(W1, ("a", "b")) == frozenset()

    def test_kleene(self, Wstar):
        word = ("a", "#", "b", "b", "#", "a", "b", "a")
        assert values(evaluate(Wstar, word)) == [1 + 2 + 2]

    def test_multi_valued(self, anbn, free_ab):
        outputs = evaluate(anbn, ("a", "a"))
        assert {free_ab.format(v) for v in outputs} == {"a a", "b b"}

    def test_evaluate_all_matches_evaluate(self, W0):
        for word, outputs in evaluate_all(W0, 3):
            assert outputs == evaluate(W0, word)

    def test_enumerate_runs(self, W0):
        runs = enumerate_runs(W0, ("a", "a"))
        assert len(runs) == 1
        assert runs[0].start == "q_a" and runs[0].end == "q_f"
        assert runs[0].weight.value == 2


class TestStructure:
    def test_trim_removes_useless_states(self, z):
        W = WeightedAutomaton.build(
            z,
            ["a"],
            ["p", "dead", "island"],
            [("p", z.identity)],
            [("p", z.identity)],
            [("p", "a", z.element(1), "p"), ("p", "a", z.element(5), "dead")],
        )
        trimmed = trim(W)
        assert trimmed.states == ("p",)
        assert equiv_up_to(W, trimmed, 4)

    def test_union_semantics(self, W0):
        U = union(W0, W0)
        assert len(U.states) == 2 * len(W0.states)
        assert evaluate(U, ("a", "b")) == evaluate(W0, ("a", "b"))

    def test_union_alphabet_mismatch(self, W0, W1):
        with pytest.raises(AlphabetMismatchError):
            union(W0, W1)

    def test_union_many_requires_members(self):
        with pytest.raises(InvalidAutomatonError):
            union_many([])

    def test_constants(self, W0, anbn):
        assert mw_constant(W0) == 1
        assert out_max(W0) == 1
        assert valuedness_estimate(W0) == 1
        assert valuedness_estimate(anbn) == 2

    def test_sequential_checks(self, W0, identity_t):
        assert is_structurally_sequential(identity_t)
        assert not is_structurally_sequential(W0)
        assert is_structurally_k_sequential(identity_t) == 1
        assert is_structurally_k_sequential(W0) is None

    def test_components(self, anbn):
        assert connected_components(anbn) == [["p"], ["r"]]
        parts = sequential_components(anbn)
        assert [p.states for p in parts] == [("p",), ("r",)]
        assert is_structurally_k_sequential(anbn) == 2

    def test_restrict_initial(self, W0, z):
        only_a = restrict_initial(W0, [("q_a", z.identity)])
        assert values(evaluate(only_a, ("a", "a"))) == [2]
        assert evaluate(only_a, ("b",)) == frozenset()

    def test_distinguishing_word(self, W0, z):
        shifted = W0.replace(final=[("q_f", z.element(1))])
        assert find_distinguishing_word(W0, shifted, 3) == ()
        assert find_distinguishing_word(W0, W0, 3) is None


class TestCombinators:
    def test_separator_already_used(self, W0):
        with pytest.raises(InvalidAutomatonError):
            concatenate(W0, W0, "a")
        with pytest.raises(InvalidAutomatonError):
            kleene_separator(W0, "b")

    def test_concatenate_alphabet(self, W1):
        assert W1.alphabet == ("a", "b", "#")
        assert len(W1.states) == 6
