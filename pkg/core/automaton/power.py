"""
幂自动机模块

W^p 的状态是 Q 上的 p 元向量，运行是 p 条同步（读同一输入）的 W 运行。
权重按坐标分别记录为 p 元组。状态按需生成，后继列表带缓存。
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple

from core.automaton.model import Transition, WeightedAutomaton
from core.errors import SizeBoundExceededError
from core.group import GroupElement
from utils.constants import DEFAULT_POWER_CAP

StateVector = Tuple[str, ...]


@dataclass(frozen=True)
class PowerEdge:
    """幂自动机中的一条边：每个坐标各走一条读同一字母的转移"""

    letter: str
    transitions: Tuple[Transition, ...]

    @property
    def source(self) -> StateVector:
        return tuple(t.src for t in self.transitions)

    @property
    def target(self) -> StateVector:
        return tuple(t.dst for t in self.transitions)

    @property
    def weights(self) -> Tuple[GroupElement, ...]:
        return tuple(t.weight for t in self.transitions)

    def restrict(self, coordinates: Sequence[int]) -> "PowerEdge":
        return PowerEdge(self.letter, tuple(self.transitions[i] for i in coordinates))


class PowerAutomaton:
    """
    W 的 p 次幂（惰性构造）

    Args:
        automaton: 底层加权自动机
        order: 幂次 p ≥ 1
        cap: |Q|^p 的上限，超过时抛出 SizeBoundExceededError
    """

    def __init__(self, automaton: WeightedAutomaton, order: int, cap: int = DEFAULT_POWER_CAP):
        if order < 1:
            raise ValueError("幂次必须为正整数")
        self.automaton = automaton
        self.order = order
        self.cap = cap
        if self.state_count() > cap:
            raise SizeBoundExceededError(
                f"|Q|^p = {len(automaton.states)}^{order} 超过上限 {cap}"
            )
        self._successors: Dict[StateVector, Tuple[PowerEdge, ...]] = {}

    def state_count(self) -> int:
        """向量状态总数 |Q|^p"""
        return len(self.automaton.states) ** self.order

    def states(self) -> Iterator[StateVector]:
        return product(self.automaton.states, repeat=self.order)

    def initial_vectors(self) -> List[StateVector]:
        """全部由初始状态组成的向量"""
        return list(product(self.automaton.initial_states(), repeat=self.order))

    def successors(self, vector: StateVector) -> Tuple[PowerEdge, ...]:
        """
        向量状态的全部出边，按字母表顺序、再按各坐标转移的规范顺序排列
        """
        cached = self._successors.get(vector)
        if cached is not None:
            return cached
        automaton = self.automaton
        edges: List[PowerEdge] = []
        for letter in automaton.alphabet:
            choices = [automaton.outgoing(state, letter) for state in vector]
            if any(not c for c in choices):
                continue
            for combo in product(*choices):
                edges.append(PowerEdge(letter, combo))
        result = tuple(edges)
        self._successors[vector] = result
        return result


def power(automaton: WeightedAutomaton, order: int, cap: int = DEFAULT_POWER_CAP) -> PowerAutomaton:
    """构造 W 的 p 次幂"""
    return PowerAutomaton(automaton, order, cap)


def path_weights(
    automaton: WeightedAutomaton, edges: Sequence[PowerEdge], order: int
) -> Tuple[GroupElement, ...]:
    """路径在每个坐标上的权重乘积"""
    ctx = automaton.context
    return tuple(ctx.product(edge.transitions[i].weight for edge in edges) for i in range(order))


def path_word(edges: Sequence[PowerEdge]) -> Tuple[str, ...]:
    return tuple(edge.letter for edge in edges)
