"""
并行求值测试
"""

from core.automaton.operations import evaluate, sequential_components, union_many
from core.parallel_eval import ParallelEvaluator, evaluate_union_parallel


def _members(automaton):
    return [c for c in sequential_components(automaton) if c.initial]


def test_matches_union_evaluation(anbn, free_ab):
    members = _members(anbn)
    union = union_many(members)
    for n in range(4):
        word = ("a",) * n
        assert evaluate_union_parallel(members, word) == evaluate(union, word)
    assert evaluate_union_parallel(members, "aa") == {free_ab.word("aa"), free_ab.word("bb")}


def test_single_worker(anbn):
    members = _members(anbn)
    assert evaluate_union_parallel(members, "a", max_workers=1) == evaluate(anbn, "a")


def test_no_members():
    assert evaluate_union_parallel([], "ab") == frozenset()


def test_log_callback(anbn):
    lines = []
    evaluator = ParallelEvaluator()
    evaluator.set_log_callback(lines.append)
    evaluator.evaluate_union(_members(anbn), "a")
    assert lines and "2" in lines[0]
