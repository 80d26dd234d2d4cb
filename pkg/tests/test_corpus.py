"""
内置语料测试
"""

import os

import pytest

from core.automaton.model import WeightedAutomaton
from core.corpus import DERIVED, FROM_LITERATURE, builtin_corpus, corpus_entry, dump_corpus
from core.serialization import load_document
from core.twinning import BtpChecker


def test_names_in_fixed_order():
    names = [entry.name for entry in builtin_corpus()]
    assert names == ["W0", "W1", "Wstar", "C0", "C1", "identity", "anbn", "an_a2n", "cancel"]


def test_lookup():
    assert corpus_entry("W0").expected_degree == 2
    assert corpus_entry("C1").is_cra
    with pytest.raises(KeyError):
        corpus_entry("W9")


def test_cra_entry_has_no_automaton():
    with pytest.raises(TypeError):
        corpus_entry("C0").automaton


def test_dump(tmp_path):
    paths = dump_corpus(str(tmp_path))
    names = sorted(os.path.basename(p) for p in paths)
    assert "W0.wa.json" in names
    assert "C0.cra.json" in names
    assert "cancel.cra.json" in names
    assert len(names) == len(builtin_corpus())
    w0 = load_document(str(tmp_path / "W0.wa.json"))
    assert isinstance(w0, WeightedAutomaton)
    assert w0 == corpus_entry("W0").document


@pytest.mark.parametrize("name", ["W0", "identity", "anbn", "an_a2n"])
def test_expected_btp_matches_checker(name, config):
    entry = corpus_entry(name)
    checker = BtpChecker(config)
    for k, status in entry.expected_btp.items():
        assert checker.check(entry.automaton, k).status is status


def test_provenance_is_tagged():
    for entry in builtin_corpus():
        assert entry.provenance.startswith((FROM_LITERATURE, DERIVED)), entry.name
    for name in ("W0", "W1", "Wstar"):
        assert corpus_entry(name).provenance.startswith(FROM_LITERATURE)
    assert corpus_entry("cancel").provenance.startswith(DERIVED)
