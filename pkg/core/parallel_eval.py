"""
多顺序自动机的并行求值

k 顺序自动机的每个成员各自在一个工作线程中读入单词，线程之间没有通信，
最后把各成员的输出取并集。
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import FrozenSet, List, Optional, Sequence

from core.automaton.model import WeightedAutomaton
from core.automaton.operations import evaluate
from core.base import BaseAnalyzer
from core.group import GroupElement


class ParallelEvaluator(BaseAnalyzer):
    """按成员并行求值"""

    def evaluate_union(
        self,
        machines: Sequence[WeightedAutomaton],
        word: Sequence[str],
        max_workers: Optional[int] = None,
    ) -> FrozenSet[GroupElement]:
        """
        Args:
            machines: 顺序自动机列表
            word: 输入单词
            max_workers: 线程数上限，None 时为成员个数

        Returns:
            各成员输出的并集，与并自动机上的求值相同
        """
        if not machines:
            return frozenset()
        workers = max(1, min(max_workers or len(machines), len(machines)))
        word = tuple(word)
        results: List[FrozenSet[GroupElement]] = []
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(evaluate, machine, word) for machine in machines]
            for future in as_completed(futures):
                if self._is_cancelled():
                    for f in futures:
                        f.cancel()
                    break
                results.append(future.result())
        self.log(f"并行求值: {len(machines)} 个成员, {workers} 个线程")
        return frozenset().union(*results)


def evaluate_union_parallel(
    machines: Sequence[WeightedAutomaton],
    word: Sequence[str],
    max_workers: Optional[int] = None,
) -> FrozenSet[GroupElement]:
    """每个成员一个线程求值并取并集"""
    return ParallelEvaluator().evaluate_union(machines, word, max_workers)
