"""
k 顺序分解测试
"""

import pytest

from core.automaton.model import WeightedAutomaton
from core.automaton.operations import equiv_up_to, is_structurally_sequential
from core.automaton.power import PowerEdge
from core.decompose import (
    Decomposer,
    decompose_k,
    n_threshold,
    partition_outputs_agree,
    split_run_loops,
    split_state,
    stitch,
)
from core.determinize import access_output, dw_explore
from core.errors import BtpViolatedError, NoLargeDelayError, TooShortError


class TestHelpers:
    def test_n_threshold(self, W0):
        assert n_threshold(W0, 1) == 2 * 1 * 3 ** 3
        with pytest.raises(ValueError):
            n_threshold(W0, 0)

    def test_split_run_loops(self, identity_t):
        t = identity_t.outgoing("q", "a")[0]
        edges = [PowerEdge("a", (t,))] * 4
        decomposition = split_run_loops(edges, len(identity_t.states))
        assert decomposition.length == 4
        assert decomposition.loops == [(0, 4)]
        assert decomposition.backbone_length() == 0

    def test_split_run_loops_too_short(self, W0):
        with pytest.raises(TooShortError):
            split_run_loops([], len(W0.states))


class TestSplitState:
    def test_split_separates_last_letter_guess(self, W0):
        word = ("a", "a", "a", "a")
        _, subset = access_output(W0, word)
        kept, rest, witness = split_state(W0, subset, word, 3)
        assert {q for q, _ in kept.pairs} == {"q_a", "q_f"}
        assert {q for q, _ in rest.pairs} == {"q_b"}
        assert witness.reference[0] == "q_a"
        assert witness.large[0] == "q_b"
        assert len(witness.loop) >= 1
        assert partition_outputs_agree(W0, subset, kept, rest, 4)

    def test_no_large_delay(self, W0):
        word = ("a",)
        _, subset = access_output(W0, word)
        with pytest.raises(NoLargeDelayError):
            split_state(W0, subset, word, 5)


class TestDecomposer:
    def test_w0_into_two_machines(self, W0, config):
        result = Decomposer(config).decompose(W0, 2)
        assert len(result.machines) == 2
        for machine in result.machines:
            assert is_structurally_sequential(machine)
        assert result.oracle_len == 8
        assert equiv_up_to(result.union(), W0, 8)
        assert result.splits
        assert result.btp is not None and result.btp.holds

    def test_w0_not_sequential(self, W0, config):
        with pytest.raises(BtpViolatedError) as info:
            Decomposer(config).decompose(W0, 1)
        assert info.value.counterexample is not None

    def test_sequential_input(self, identity_t, config):
        machines = decompose_k(identity_t, 1, config)
        assert len(machines) == 1
        assert equiv_up_to(machines[0], identity_t, 4)

    def test_transducer_branches(self, anbn, config):
        result = Decomposer(config).decompose(anbn, 2)
        assert len(result.machines) == 2
        assert equiv_up_to(result.union(), anbn, 5)

    def test_explicit_threshold(self, W0, config):
        result = Decomposer(config).decompose(W0, 2, threshold=2)
        assert result.threshold >= 2
        assert equiv_up_to(result.union(), W0, 6)

    def test_empty_relation(self, z, config):
        empty = WeightedAutomaton.build(z, ["a"], ["p"], [("p", z.identity)], [], [])
        result = Decomposer(config).decompose(empty, 2)
        assert result.machines == []
        assert result.union() is None

    def test_invalid_order(self, W0, config):
        with pytest.raises(ValueError):
            Decomposer(config).decompose(W0, 0)


class TestStitch:
    def test_complete_fragment_without_parts(self, identity_t):
        fragment = dw_explore(identity_t, 10)
        assert fragment.is_complete()
        machines = stitch(fragment, {})
        assert len(machines) == 1
        assert is_structurally_sequential(machines[0])
        assert equiv_up_to(machines[0], identity_t, 4)
