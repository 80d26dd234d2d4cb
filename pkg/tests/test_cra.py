"""
代价寄存器自动机测试
"""

import pytest

from core.automaton.model import WeightedAutomaton
from core.automaton.operations import equiv_up_to, sequential_components
from core.corpus import w0
from core.cra import (
    CostRegisterAutomaton,
    Positivizer,
    compute_alive,
    compute_clean,
    cra_equiv_automaton,
    cra_eval,
    cra_outputs,
    cra_to_automaton_union,
    cra_to_kseq,
    kseq_to_cra,
    positivize,
    positivize_bound,
)
from core.errors import (
    InvalidAutomatonError,
    NotIndependentError,
    NotSequentialInputError,
    NotWordRelationError,
    StateCapExceededError,
    UnknownLetterError,
    UnsupportedGroupError,
)
from core.group import FreeGroup


def values(outputs):
    return sorted(v.value for v in outputs)


class TestModel:
    def test_duplicate_transition_rejected(self, z):
        with pytest.raises(InvalidAutomatonError):
            CostRegisterAutomaton.build(
                z, ["a"], ["q"], "q", ["X"], [("q", "a", "q", {}), ("q", "a", "q", {})], []
            )

    def test_omitted_registers_are_copied(self, C0, z):
        _, update = C0.step("q_a", "a")
        assert update["X_b"] == ("X_b", z.identity)

    def test_independence(self, C0, C1):
        assert C0.independent
        assert not C1.independent


class TestEval:
    def test_f_last(self, C0):
        assert values(cra_eval(C0, ("a", "b", "a"))) == [2]
        assert values(cra_eval(C0, ())) == [0]
        assert values(cra_eval(C0, ("b", "b", "a"))) == [1]

    def test_copying_registers(self, C1):
        assert values(cra_eval(C1, ("a", "b", "#", "a"))) == [2]
        assert values(cra_eval(C1, ("a", "a", "#", "b", "b"))) == [4]

    def test_stuck_run_is_empty(self, cancel):
        assert cra_eval(cancel, ("x", "x")) == frozenset()
        assert cra_eval(cancel, ("x",)) == frozenset()

    def test_unknown_letter(self, C0):
        with pytest.raises(UnknownLetterError):
            cra_eval(C0, ("z",))

    def test_cra_matches_automaton(self, C0):
        assert cra_equiv_automaton(C0, w0(), 5)
        assert len(cra_outputs(C0, 2)) == 7


class TestConversions:
    def test_kseq_round_trip(self, anbn, free_ab):
        machines = sequential_components(anbn)
        cra = kseq_to_cra(machines)
        assert cra.independent
        assert cra.registers == ("X1", "X2")
        outputs = cra_eval(cra, ("a", "a", "a"))
        assert {free_ab.format(v) for v in outputs} == {"a a a", "b b b"}
        assert cra_equiv_automaton(cra, anbn, 5)
        back = cra_to_kseq(cra)
        assert len(back) == 2
        assert equiv_up_to(cra_to_automaton_union(cra), anbn, 5)

    def test_initial_weight_enters_on_first_letter(self, z):
        W = WeightedAutomaton.build(
            z,
            ["a"],
            ["p"],
            [("p", z.element(5))],
            [("p", z.element(1))],
            [("p", "a", z.element(2), "p")],
        )
        cra = kseq_to_cra([W])
        assert values(cra_eval(cra, ())) == [6]
        assert values(cra_eval(cra, ("a", "a"))) == [10]

    def test_c0_projections(self, C0):
        machines = cra_to_kseq(C0)
        assert len(machines) == 2
        assert equiv_up_to(cra_to_automaton_union(C0), w0(), 5)

    def test_not_independent(self, C1):
        with pytest.raises(NotIndependentError):
            cra_to_kseq(C1)

    def test_non_sequential_input(self, W0):
        with pytest.raises(NotSequentialInputError):
            kseq_to_cra([W0])
        with pytest.raises(NotSequentialInputError):
            kseq_to_cra([])


class TestAnalysis:
    def test_alive(self, C0, cancel):
        assert len(compute_alive(C0)) == 4
        assert compute_alive(cancel) == frozenset({("q0", "X"), ("q1", "X")})

    def test_clean(self, cancel, C0):
        assert compute_clean(cancel) == frozenset()
        assert len(compute_clean(C0)) == 4

    def test_bound(self, cancel):
        assert positivize_bound(cancel) == (4, 2, 0)


class TestPositivize:
    def test_cancelling_updates(self, cancel):
        result = positivize(cancel)
        ctx = result.context
        assert all(ctx.is_positive(w) for w in result.update_weights())
        assert all(ctx.is_positive(alpha) for _, _, alpha in result.output)
        for word, outputs in cra_outputs(cancel, 6):
            assert cra_eval(result, word) == outputs
        xy = ("x", "y")
        assert {ctx.format(v) for v in cra_eval(result, xy * 3)} == {"b c b c b c"}

    def test_positive_cra_is_unchanged(self, free_ab):
        cra = CostRegisterAutomaton.build(
            free_ab,
            ["a", "b"],
            ["q"],
            "q",
            ["X"],
            [("q", "a", "q", {"X": ("X", free_ab.word("a"))}),
             ("q", "b", "q", {"X": ("X", free_ab.word("b"))})],
            [("q", "X", free_ab.identity)],
        )
        result = Positivizer().positivize(cra)
        assert result.states == ("q",)
        assert set(result.update_weights()) == set(cra.update_weights())

    def test_integer_group_rejected(self, C0):
        with pytest.raises(UnsupportedGroupError):
            positivize(C0)

    def test_not_word_relation(self):
        ctx = FreeGroup(("a",))
        cra = CostRegisterAutomaton.build(
            ctx,
            ["x"],
            ["q"],
            "q",
            ["X"],
            [("q", "x", "q", {"X": ("X", ctx.parse("a'"))})],
            [("q", "X", ctx.identity)],
        )
        with pytest.raises(NotWordRelationError):
            positivize(cra)

    def test_state_cap(self, cancel, config):
        config.exploration.state_cap = 1
        with pytest.raises(StateCapExceededError):
            positivize(cancel, config)
