"""
带延迟的子集构造模块

D_W 的状态是 (状态, 延迟) 对的有限集合 SubsetState。每读一个字母：
1. 按 W 的转移更新所有对，得到 S'
2. 按规范顺序（状态序号，再群元素序）选出参考对 (p, α)
3. 输出 α，并把 S' 规范化为 {(q, α⁻¹β)}

功能：
- dw_initial / dw_step: 初始状态与单步转移
- dw_explore: 在延迟范数上限内探索可达片段，返回片段及其边界
- sequentialize_btp1: BTP-1 成立时构造等价的顺序自动机
- witness_runs: 为子集状态中的每个对重建一条见证运行
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from core.analysis_config import AnalysisConfig
from core.automaton.model import Transition, WeightedAutomaton, WeightedPair
from core.automaton.operations import trim, valuedness_estimate
from core.base import BaseAnalyzer
from core.errors import (
    DeadEndError,
    EmptyAutomatonError,
    ExplorationInconclusiveError,
    InvalidAutomatonError,
    NotTwinnedError,
    StateCapExceededError,
)
from core.group import GroupElement
from utils.words import Word, format_word


@dataclass(frozen=True)
class SubsetState:
    """D_W 的状态：(状态, 延迟) 对的集合"""

    pairs: FrozenSet[WeightedPair]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def max_norm(self, automaton: WeightedAutomaton) -> int:
        ctx = automaton.context
        return max((ctx.norm(delay) for _, delay in self.pairs), default=0)

    def has_identity(self, automaton: WeightedAutomaton) -> bool:
        ctx = automaton.context
        return any(ctx.is_identity(delay) for _, delay in self.pairs)

    def sorted_pairs(self, automaton: WeightedAutomaton) -> List[WeightedPair]:
        return sorted(self.pairs, key=automaton.pair_key)

    def label(self, automaton: WeightedAutomaton) -> List[List[str]]:
        """序列化用的有序 [状态, 元素] 列表"""
        ctx = automaton.context
        return [[q, ctx.format(d)] for q, d in self.sorted_pairs(automaton)]


def dw_initial(automaton: WeightedAutomaton) -> SubsetState:
    """
    D_W 的初始状态：原样复制 t_init，初始输出为单位元

    Raises:
        EmptyAutomatonError: 自动机没有初始对
    """
    if not automaton.initial:
        raise EmptyAutomatonError("自动机没有初始对")
    return SubsetState(frozenset(automaton.initial))


def dw_step(
    automaton: WeightedAutomaton, subset: SubsetState, letter: str
) -> Tuple[GroupElement, SubsetState]:
    """
    D_W 的单步转移

    Args:
        automaton: 加权自动机
        subset: 当前子集状态
        letter: 输入字母

    Returns:
        (输出 α, 规范化后的下一状态)

    Raises:
        DeadEndError: 没有任何对能读入该字母
    """
    ctx = automaton.context
    updated = set()
    for state, delay in subset.pairs:
        for t in automaton.outgoing(state, letter):
            updated.add((t.dst, ctx.op(delay, t.weight)))
    if not updated:
        raise DeadEndError(letter)
    _, alpha = min(updated, key=automaton.pair_key)
    alpha_inv = ctx.inverse(alpha)
    return alpha, SubsetState(frozenset((q, ctx.op(alpha_inv, beta)) for q, beta in updated))


def subset_outputs(
    automaton: WeightedAutomaton, subset: SubsetState, prefix: GroupElement
) -> FrozenSet[GroupElement]:
    """子集状态的终止输出 {prefix·α·β | (q, α) ∈ S, (q, β) ∈ t_final}"""
    ctx = automaton.context
    result = set()
    for state, delay in subset.pairs:
        for phi in automaton.final_weights(state):
            result.add(ctx.op(prefix, ctx.op(delay, phi)))
    return frozenset(result)


@dataclass
class ExploredFragment:
    """D_W 的已探索片段"""

    automaton: WeightedAutomaton
    norm_cap: int
    states: List[SubsetState] = field(default_factory=list)  # 片段内状态，广度优先顺序
    frontier: List[SubsetState] = field(default_factory=list)  # 超过上限的状态
    names: Dict[SubsetState, str] = field(default_factory=dict)
    access: Dict[SubsetState, Word] = field(default_factory=dict)
    transitions: List[Tuple[SubsetState, str, GroupElement, SubsetState]] = field(
        default_factory=list
    )

    @property
    def initial(self) -> SubsetState:
        return self.states[0]

    def is_complete(self) -> bool:
        return not self.frontier

    def final_pairs(self, subset: SubsetState) -> List[GroupElement]:
        """t'_final 在该状态上的输出 {α·β}"""
        ctx = self.automaton.context
        return sorted(subset_outputs(self.automaton, subset, ctx.identity), key=ctx.sort_key)

    def to_automaton(self, include_frontier: bool = False) -> WeightedAutomaton:
        """
        把片段转换为顺序加权自动机

        Args:
            include_frontier: 是否保留边界状态（仅带终止输出，无出边）
        """
        base = self.automaton
        ctx = base.context
        kept = list(self.states)
        if include_frontier:
            kept.extend(self.frontier)
        kept_set = set(kept)
        final = [
            (self.names[s], weight) for s in kept for weight in self.final_pairs(s)
        ]
        transitions = [
            Transition(self.names[src], letter, weight, self.names[dst])
            for src, letter, weight, dst in self.transitions
            if src in kept_set and dst in kept_set
        ]
        return WeightedAutomaton.build(
            ctx,
            base.alphabet,
            [self.names[s] for s in kept],
            [(self.names[self.initial], ctx.identity)],
            final,
            transitions,
        )

    def labels(self) -> Dict[str, List[List[str]]]:
        """状态名到有序 (状态, 延迟) 列表的映射"""
        result = {}
        for subset in list(self.states) + list(self.frontier):
            result[self.names[subset]] = subset.label(self.automaton)
        return result


class SubsetConstruction(BaseAnalyzer):
    """带延迟子集构造的探索器"""

    def explore(
        self, automaton: WeightedAutomaton, norm_cap: int, state_cap: Optional[int] = None
    ) -> ExploredFragment:
        """
        在延迟范数上限内广度优先探索 D_W

        初始状态不受范数上限约束；延迟范数超过 norm_cap 的状态进入边界，不再扩展。

        Raises:
            StateCapExceededError: 片段状态数（不含初始状态）超过 state_cap
        """
        if state_cap is None:
            state_cap = self.config.exploration.state_cap
        start = dw_initial(automaton)
        fragment = ExploredFragment(automaton, norm_cap)
        fragment.states.append(start)
        fragment.names[start] = "S0"
        fragment.access[start] = ()
        queue = deque([start])
        while queue:
            subset = queue.popleft()
            for letter in automaton.alphabet:
                try:
                    output, nxt = dw_step(automaton, subset, letter)
                except DeadEndError:
                    continue
                fragment.transitions.append((subset, letter, output, nxt))
                if nxt in fragment.names:
                    continue
                fragment.access[nxt] = fragment.access[subset] + (letter,)
                if nxt.max_norm(automaton) > norm_cap:
                    fragment.names[nxt] = f"F{len(fragment.frontier)}"
                    fragment.frontier.append(nxt)
                    continue
                if len(fragment.states) > state_cap:
                    raise StateCapExceededError(f"子集状态数超过上限 {state_cap}")
                fragment.names[nxt] = f"S{len(fragment.states)}"
                fragment.states.append(nxt)
                queue.append(nxt)
        self.log(
            f"子集构造: {len(fragment.states)} 个状态, 边界 {len(fragment.frontier)} 个 "
            f"(延迟上限 {norm_cap})"
        )
        return fragment

    def norm_caps(self, automaton: WeightedAutomaton) -> Tuple[int, int]:
        """
        计算 (理论阈值 N_W, 实际使用的上限)

        ℓ 取用户给定值，否则用有界穷举估计。
        """
        from core.decompose import n_threshold

        budget = self.config.exploration
        ell = budget.valuedness_override
        if ell is None:
            ell = valuedness_estimate(automaton, budget.valuedness_len, budget.state_cap)
        theoretical = n_threshold(automaton, max(ell, 1))
        return theoretical, min(theoretical, budget.norm_cap)

    def sequentialize(self, automaton: WeightedAutomaton) -> WeightedAutomaton:
        """
        BTP-1 成立时把 W 转换为等价的顺序自动机

        Raises:
            NotTwinnedError: 延迟超过理论阈值 N_W
            ExplorationInconclusiveError: 延迟只超过了实用上限
        """
        return self.sequential_fragment(automaton).to_automaton()

    def sequential_fragment(self, automaton: WeightedAutomaton) -> ExploredFragment:
        """与 sequentialize 相同，但返回完整探索的片段（带状态标注）"""
        automaton = trim(automaton)
        theoretical, cap = self.norm_caps(automaton)
        fragment = self.explore(automaton, cap)
        if fragment.frontier:
            witness = format_word(fragment.access[fragment.frontier[0]])
            if cap >= theoretical:
                raise NotTwinnedError(
                    f"单词 {witness!r} 上的延迟超过理论阈值 N_W = {theoretical}"
                )
            raise ExplorationInconclusiveError(
                f"单词 {witness!r} 上的延迟超过实用上限 {cap}（理论阈值 N_W = {theoretical}）"
            )
        return fragment


def dw_explore(
    automaton: WeightedAutomaton,
    norm_cap: int,
    state_cap: Optional[int] = None,
    config: Optional[AnalysisConfig] = None,
) -> ExploredFragment:
    """在延迟范数上限内探索 D_W 的可达片段"""
    return SubsetConstruction(config).explore(automaton, norm_cap, state_cap)


def sequentialize_btp1(
    automaton: WeightedAutomaton, config: Optional[AnalysisConfig] = None
) -> WeightedAutomaton:
    """满足 BTP-1 的自动机的顺序化"""
    return SubsetConstruction(config).sequentialize(automaton)


def access_output(
    automaton: WeightedAutomaton, word: Sequence[str]
) -> Tuple[GroupElement, SubsetState]:
    """沿单词在 D_W 中行走，返回累计输出和到达的子集状态"""
    ctx = automaton.context
    subset = dw_initial(automaton)
    total = ctx.identity
    for letter in word:
        output, subset = dw_step(automaton, subset, letter)
        total = ctx.op(total, output)
    return total, subset


@dataclass(frozen=True)
class WitnessRun:
    """从初始对出发、在访问单词上到达某个对的运行"""

    initial: WeightedPair
    transitions: Tuple[Transition, ...]

    @property
    def end(self) -> str:
        return self.transitions[-1].dst if self.transitions else self.initial[0]

    def weight(self, automaton: WeightedAutomaton) -> GroupElement:
        """γ · 运行权重"""
        ctx = automaton.context
        return ctx.op(self.initial[1], ctx.product(t.weight for t in self.transitions))


def witness_runs(
    automaton: WeightedAutomaton, access_word: Sequence[str], subset: SubsetState
) -> Dict[WeightedPair, WitnessRun]:
    """
    为 S 中每个对 (q, β) 重建一条见证运行：读 access_word 到达 q，且 γ·运行权重 = α·β，
    其中 α 是 D_W 沿 access_word 的累计输出

    广度优先推进 (状态, 权重) 配置并记录回溯指针。
    """
    ctx = automaton.context
    alpha, reached = access_output(automaton, access_word)
    if reached != subset:
        raise InvalidAutomatonError("访问单词没有到达给定的子集状态")

    Config = Tuple[str, GroupElement]
    layers: List[Dict[Config, Tuple[Optional[Config], Optional[Transition]]]] = []
    layer: Dict[Config, Tuple[Optional[Config], Optional[Transition]]] = {}
    origin: Dict[Config, WeightedPair] = {}
    for pair in automaton.sorted_initial():
        if pair not in layer:
            layer[pair] = (None, None)
            origin[pair] = pair
    layers.append(layer)
    for letter in access_word:
        nxt: Dict[Config, Tuple[Optional[Config], Optional[Transition]]] = {}
        for config in layer:
            state, weight = config
            for t in automaton.outgoing(state, letter):
                target = (t.dst, ctx.op(weight, t.weight))
                if target not in nxt:
                    nxt[target] = (config, t)
        layers.append(nxt)
        layer = nxt

    result: Dict[WeightedPair, WitnessRun] = {}
    for pair in subset.sorted_pairs(automaton):
        state, delay = pair
        config: Optional[Config] = (state, ctx.op(alpha, delay))
        if config not in layers[-1]:
            raise InvalidAutomatonError(f"找不到对 ({state}, {ctx.format(delay)}) 的见证运行")
        transitions: List[Transition] = []
        for depth in range(len(access_word), 0, -1):
            prev, t = layers[depth][config]
            transitions.append(t)  # type: ignore[arg-type]
            config = prev
        transitions.reverse()
        result[pair] = WitnessRun(origin[config], tuple(transitions))  # type: ignore[index]
    return result


def check_normalized(automaton: WeightedAutomaton, fragment: ExploredFragment) -> List[str]:
    """返回不含单位延迟的非初始状态名（规范化不变量的检查）"""
    return [
        fragment.names[s]
        for s in fragment.states[1:] + fragment.frontier
        if not s.has_identity(automaton)
    ]
