"""
带延迟子集构造测试
"""

import pytest

from core.automaton.model import WeightedAutomaton
from core.automaton.operations import equiv_up_to, evaluate, is_structurally_sequential
from core.determinize import (
    SubsetConstruction,
    access_output,
    check_normalized,
    dw_explore,
    dw_initial,
    dw_step,
    sequentialize_btp1,
    witness_runs,
)
from core.errors import (
    DeadEndError,
    EmptyAutomatonError,
    ExplorationInconclusiveError,
    NotTwinnedError,
)


@pytest.fixture
def delayed(z):
    """两条分支在第一个字母处输出不同，之后同步：BTP-1 成立"""
    one, two = z.element(1), z.element(2)
    return WeightedAutomaton.build(
        z,
        ["a", "b"],
        ["p", "r", "s"],
        [("p", z.identity)],
        [("r", z.identity), ("s", z.element(1))],
        [
            ("p", "a", one, "r"),
            ("p", "a", two, "s"),
            ("r", "b", one, "r"),
            ("s", "b", one, "s"),
        ],
    )


class TestStep:
    def test_initial_copies_pairs(self, W0):
        start = dw_initial(W0)
        assert set(start.pairs) == set(W0.initial)

    def test_empty_initial(self, z):
        empty = WeightedAutomaton.build(z, ["a"], ["p"], [], [], [])
        with pytest.raises(EmptyAutomatonError):
            dw_initial(empty)

    def test_step_normalizes(self, W0):
        output, nxt = dw_step(W0, dw_initial(W0), "a")
        assert output.value == 1
        assert nxt.has_identity(W0)
        delays = {q: d.value for q, d in nxt.pairs}
        assert delays == {"q_a": 0, "q_f": 0, "q_b": -1}

    def test_dead_end(self, delayed):
        with pytest.raises(DeadEndError):
            dw_step(delayed, dw_initial(delayed), "b")


class TestExplore:
    def test_fragment_is_normalized(self, W0):
        fragment = dw_explore(W0, norm_cap=3)
        assert fragment.frontier
        assert check_normalized(W0, fragment) == []
        assert fragment.names[fragment.initial] == "S0"

    def test_sequentialize_btp1(self, delayed):
        seq = sequentialize_btp1(delayed)
        assert is_structurally_sequential(seq)
        assert equiv_up_to(seq, delayed, 5)
        outputs = evaluate(seq, ("a", "b", "b"))
        assert sorted(v.value for v in outputs) == [3, 5]

    def test_fragment_labels(self, delayed):
        fragment = SubsetConstruction().sequential_fragment(delayed)
        labels = fragment.labels()
        assert labels["S0"] == [["p", "0"]]
        assert set(labels) == {fragment.names[s] for s in fragment.states}

    def test_identity_transducer(self, identity_t):
        seq = sequentialize_btp1(identity_t)
        assert len(seq.states) == 1
        assert equiv_up_to(seq, identity_t, 4)

    def test_not_twinned(self, W0, config):
        with pytest.raises(NotTwinnedError):
            SubsetConstruction(config).sequentialize(W0)

    def test_practical_cap_inconclusive(self, W0, config):
        config.exploration.norm_cap = 2
        with pytest.raises(ExplorationInconclusiveError):
            SubsetConstruction(config).sequentialize(W0)


class TestWitnessRuns:
    def test_runs_reach_pairs(self, W0):
        word = ("b", "a", "a")
        alpha, subset = access_output(W0, word)
        runs = witness_runs(W0, word, subset)
        ctx = W0.context
        for (state, delay), run in runs.items():
            assert run.end == state
            assert run.weight(W0) == ctx.op(alpha, delay)
            assert tuple(t.letter for t in run.transitions) == word
