"""
Lipschitz 见证测试
"""

import pytest

from core.corpus import builtin_corpus, corpus_entry
from core.errors import InvalidCounterexampleError, PumpLimitExceededError
from core.lipschitz import (
    LipschitzFalsifier,
    LipWitness,
    btp_lipschitz_constant,
    falsify_lipschitz,
    find_lip_violation,
    verify_lip_witness,
)
from core.twinning import BtpChecker, BtpStatus, verify_counterexample


@pytest.fixture
def w0_counterexample(W0, config):
    return BtpChecker(config).check(W0, 1).counterexample


class TestVerify:
    def test_single_pair_is_not_a_witness(self, W0, z):
        assert not verify_lip_witness(W0, LipWitness(1, [((), z.element(0))]))

    def test_pair_outside_relation(self, W0, z):
        witness = LipWitness(0, [((), z.element(0)), (("a",), z.element(7))])
        assert not verify_lip_witness(W0, witness)

    def test_length_bound(self, W0, z):
        witness = LipWitness(0, [((), z.element(0)), (("a", "a"), z.element(2))])
        assert verify_lip_witness(W0, witness)
        assert not verify_lip_witness(W0, witness, length_bound=1)

    def test_margins(self, z):
        witness = LipWitness(2, [((), z.element(0)), (("a",), z.element(9))])
        assert witness.k == 1
        assert witness.margins(z) == [(0, 1, 9, 4)]


class TestFalsify:
    @pytest.mark.parametrize("L", [0, 1, 10, 100])
    def test_w0_witness(self, W0, w0_counterexample, L):
        witness = falsify_lipschitz(W0, w0_counterexample, L)
        assert witness.k == 1
        assert witness.L == L
        assert verify_lip_witness(W0, witness)

    def test_wstar_order_two(self, Wstar, config):
        cex = BtpChecker(config).check(Wstar, 2).counterexample
        witness = LipschitzFalsifier(config).falsify(Wstar, cex, 1)
        assert witness.k == 2
        assert verify_lip_witness(Wstar, witness)
        assert "Lip-2 witness" in witness.describe(Wstar.context)

    def test_transducer(self, anbn, config):
        cex = BtpChecker(config).check(anbn, 1).counterexample
        witness = falsify_lipschitz(anbn, cex, 2, config)
        assert verify_lip_witness(anbn, witness)

    def test_invalid_counterexample(self, W0, w0_counterexample):
        w0_counterexample.initial = [w0_counterexample.initial[0]] * 2
        with pytest.raises(InvalidCounterexampleError):
            falsify_lipschitz(W0, w0_counterexample, 1)

    def test_negative_constant(self, W0, w0_counterexample):
        with pytest.raises(ValueError):
            falsify_lipschitz(W0, w0_counterexample, -1)

    @pytest.mark.parametrize("limit", [0, 4])
    def test_pump_limit_on_valid_counterexample(self, W0, w0_counterexample, config, limit):
        assert verify_counterexample(W0, w0_counterexample, 1)
        config.lip_pump_limit = limit
        with pytest.raises(PumpLimitExceededError):
            LipschitzFalsifier(config).falsify(W0, w0_counterexample, 100)


FAILING_ORDERS = [
    (entry.name, k)
    for entry in builtin_corpus()
    if not entry.is_cra
    for k, status in sorted(entry.expected_btp.items())
    if status is BtpStatus.FAILS
]


@pytest.mark.parametrize("name, k", FAILING_ORDERS)
@pytest.mark.parametrize("L", [1, 5, 25])
def test_every_failing_order_yields_witness(name, k, L, config):
    automaton = corpus_entry(name).automaton
    result = BtpChecker(config).check(automaton, k)
    assert result.fails
    witness = falsify_lipschitz(automaton, result.counterexample, L, config)
    assert witness.k == k
    assert verify_lip_witness(automaton, witness)


class TestSearch:
    def test_finds_violation_for_small_constant(self, W0):
        witness = find_lip_violation(W0, 1, 0, 2)
        assert witness is not None
        assert verify_lip_witness(W0, witness, length_bound=2)

    def test_identity_is_lipschitz(self, identity_t):
        assert find_lip_violation(identity_t, 1, 1, 3) is None

    def test_two_sequential_machines_are_lip_two(self, W0):
        assert find_lip_violation(W0, 2, 4, 6) is None

    def test_btp_constant(self, W0):
        assert btp_lipschitz_constant(W0, 2) == 2 * 1 * (3 * 3 ** 3 + 1)
