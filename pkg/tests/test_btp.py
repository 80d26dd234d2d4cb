"""
分支孪生性质判定与顺序度测试
"""

import pytest

from core.analysis_config import BudgetMode
from core.automaton.model import WeightedAutomaton
from core.automaton.operations import union_many
from core.automaton.power import power
from core.corpus import builtin_corpus, corpus_entry
from core.errors import NotPositiveError
from core.twinning import (
    BtpChecker,
    BtpStatus,
    Evidence,
    VectorGraph,
    check_btp,
    counterexample_problems,
    degree_of_sequentiality,
    find_diff_cycle,
    skeleton_of,
    verify_counterexample,
)


class TestCommutative:
    def test_w0_fails_at_one(self, W0, config):
        result = BtpChecker(config).check(W0, 1)
        assert result.status is BtpStatus.FAILS
        assert result.budget_mode is BudgetMode.THEORETICAL
        cex = result.counterexample
        assert cex.run_count == 2
        assert verify_counterexample(W0, cex, 1)
        assert all(sep.evidence is Evidence.WEIGHT for sep in cex.separations)

    def test_w0_holds_at_two(self, W0, config):
        result = check_btp(W0, 2, config=config)
        assert result.holds
        assert result.counterexample is None

    def test_degree_w0(self, W0, config):
        result = degree_of_sequentiality(W0, 4, config=config)
        assert result.status is BtpStatus.HOLDS
        assert result.degree == 2
        assert str(result) == "2"
        assert [r.status for r in result.results] == [BtpStatus.FAILS, BtpStatus.HOLDS]

    def test_degree_w1(self, W1, config):
        result = BtpChecker(config).degree(W1, 4)
        assert result.degree == 4

    def test_wstar_not_multisequential(self, Wstar, config):
        result = BtpChecker(config).degree(Wstar, 3)
        assert result.status is BtpStatus.FAILS
        assert result.degree is None
        assert str(result) == ">=4"
        for r in result.results:
            assert verify_counterexample(Wstar, r.counterexample, r.k)

    def test_counterexample_run_count(self, Wstar, config):
        result = BtpChecker(config).check(Wstar, 2)
        assert result.fails
        assert result.counterexample.run_count == 3
        assert result.counterexample.loop_count >= 2

    def test_empty_relation_holds(self, z):
        empty = WeightedAutomaton.build(z, ["a"], ["p"], [("p", z.identity)], [], [])
        assert check_btp(empty, 1).holds

    def test_invalid_order(self, W0):
        with pytest.raises(ValueError):
            check_btp(W0, 0)

    def test_small_budget_inconclusive(self, W1, small_config):
        result = BtpChecker(small_config).check(W1, 4)
        assert result.status is BtpStatus.INCONCLUSIVE
        assert result.counterexample is None

    def test_practical_mode_when_cycle_cap_low(self, W0, config):
        config.search.cycle_len_cap = 1
        result = BtpChecker(config).check(W0, 1)
        assert result.budget_mode is BudgetMode.PRACTICAL


class TestTransducers:
    def test_identity_holds(self, identity_t, config):
        result = BtpChecker(config).check(identity_t, 1)
        assert result.holds

    def test_anbn_mismatch(self, anbn, config):
        result = BtpChecker(config).check(anbn, 1)
        assert result.fails
        assert result.counterexample.separations[0].evidence is Evidence.MISMATCH
        assert BtpChecker(config).check(anbn, 2).holds

    def test_an_a2n_length(self, an_a2n, config):
        result = BtpChecker(config).check(an_a2n, 1)
        assert result.fails
        assert result.counterexample.separations[0].evidence is Evidence.LENGTH
        assert BtpChecker(config).degree(an_a2n, 3).degree == 2

    def test_non_positive_weights_rejected(self, free_ab):
        W = WeightedAutomaton.build(
            free_ab,
            ["a"],
            ["p"],
            [("p", free_ab.identity)],
            [("p", free_ab.identity)],
            [("p", "a", free_ab.parse("a'"), "p")],
        )
        with pytest.raises(NotPositiveError):
            BtpChecker().check(W, 1)


class TestVerifier:
    def test_tampered_counterexample_rejected(self, W0, config):
        cex = BtpChecker(config).check(W0, 1).counterexample
        cex.initial = [cex.initial[0], cex.initial[0]]
        problems = counterexample_problems(W0, cex, 1)
        assert problems

    def test_wrong_order_rejected(self, W0, config):
        cex = BtpChecker(config).check(W0, 1).counterexample
        assert not verify_counterexample(W0, cex, 2)

    def test_skeleton_is_consistent(self, Wstar, config):
        cex = BtpChecker(config).check(Wstar, 2).counterexample
        skeleton = skeleton_of(cex)
        assert skeleton.k == 2
        assert skeleton.is_consistent()
        assert "skeleton: k=2" in skeleton.summary()
        assert "counterexample" in cex.describe(Wstar)


class TestDiffCycle:
    def test_cycle_separates_counters(self, W0):
        w0_squared = power(W0, 2)
        cycle = find_diff_cycle(w0_squared, ("q_a", "q_b"), 0, 1, 4)
        assert cycle is not None
        assert cycle[0].source == ("q_a", "q_b")
        assert cycle[-1].target == ("q_a", "q_b")
        z = W0.context
        first = z.product(e.transitions[0].weight for e in cycle)
        second = z.product(e.transitions[1].weight for e in cycle)
        assert first != second

    def test_equal_coordinates_never_separate(self, W0):
        assert find_diff_cycle(power(W0, 2), ("q_a", "q_a"), 0, 1, 4) is None

    def test_zero_length_bound(self, W0):
        assert find_diff_cycle(power(W0, 2), ("q_a", "q_b"), 0, 1, 0) is None

    def test_vector_graph_components(self, W0):
        graph = VectorGraph(power(W0, 2))
        assert graph.component(("q_a", "q_b")) == (("q_a", "q_b"),)
        assert graph.is_nontrivial(("q_a", "q_b"))
        assert not graph.is_nontrivial(("q_f", "q_b"))


WEIGHTED_ENTRIES = [
    entry.name for entry in builtin_corpus() if not entry.is_cra and entry.expected_btp
]


@pytest.mark.parametrize("name", WEIGHTED_ENTRIES)
def test_expected_statuses_are_monotone(name, config):
    entry = corpus_entry(name)
    checker = BtpChecker(config)
    statuses = {k: checker.check(entry.automaton, k).status for k in entry.expected_btp}
    assert statuses == entry.expected_btp
    for k, status in statuses.items():
        if status is BtpStatus.FAILS:
            assert all(statuses.get(k2, BtpStatus.FAILS) is BtpStatus.FAILS for k2 in range(1, k))


@pytest.mark.parametrize("name", WEIGHTED_ENTRIES)
def test_status_ignores_duplicated_machine(name, config):
    entry = corpus_entry(name)
    doubled = union_many([entry.automaton, entry.automaton])
    checker = BtpChecker(config)
    for k in entry.expected_btp:
        assert checker.check(doubled, k).status is checker.check(entry.automaton, k).status
