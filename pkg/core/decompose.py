"""
k 顺序分解模块

对满足 BTP-k 的加权自动机 W 构造至多 k 个顺序自动机，其并与 W 等价：
1. 在延迟范数阈值内探索 D_W，得到片段 U 和边界
2. 对每个边界状态 S，用同步循环把 S 拆成 S' 与 S''，两者的秩之和不超过 k
3. 递归分解 W_{S'} 与 W_{S''}（k = 1 时即为顺序化）
4. 把第 i 个子机器嫁接到 U 的第 i 个副本上，得到 V̄_i

阈值先取实用值 threshold_factor·M_W·|Q|，穷举等价校验不通过时翻倍重试。
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from core.analysis_config import AnalysisConfig
from core.automaton.model import Transition, WeightedAutomaton, WeightedPair
from core.automaton.operations import (
    evaluate_all,
    find_distinguishing_word,
    is_structurally_sequential,
    mw_constant,
    restrict_initial,
    trim,
    union_many,
)
from core.automaton.power import PowerEdge, StateVector
from core.base import BaseAnalyzer
from core.determinize import (
    ExploredFragment,
    SubsetConstruction,
    SubsetState,
    WitnessRun,
    witness_runs,
)
from core.errors import (
    BtpViolatedError,
    BudgetExceededError,
    NoLargeDelayError,
    NotPositiveError,
    SplitNotFoundError,
    TooShortError,
)
from core.group import GroupElement
from core.twinning.checker import BtpChecker
from core.twinning.skeleton import BtpResult, BtpStatus
from utils.words import Word, format_word


def n_threshold(automaton: WeightedAutomaton, ell: int) -> int:
    """
    理论阈值 N_W = 2·M_W·|Q|^{ℓ|Q|}

    Args:
        automaton: 加权自动机
        ell: 值数 ℓ ≥ 1

    Returns:
        任意精度整数
    """
    if ell < 1:
        raise ValueError("值数 ℓ 必须为正整数")
    n = len(automaton.states)
    return 2 * mw_constant(automaton) * n ** (ell * n)


# ---------------------------------------------------------------- 循环切分


@dataclass
class LoopDecomposition:
    """
    同步运行的循环分解

    vectors[i] 是第 i 个位置的状态向量；loops 中的区间 [s, t) 满足 vectors[s] == vectors[t]，
    互不相交且按位置排序；去掉全部循环后剩下的主干长度小于 |Q|^m。
    """

    vectors: List[StateVector]
    loops: List[Tuple[int, int]]

    @property
    def length(self) -> int:
        return len(self.vectors) - 1

    def backbone_length(self) -> int:
        return self.length - sum(t - s for s, t in self.loops)


def run_vectors(edges: Sequence[PowerEdge], start: StateVector) -> List[StateVector]:
    vectors = [tuple(start)]
    for edge in edges:
        vectors.append(edge.target)
    return vectors


def split_run_loops(
    edges: Sequence[PowerEdge], state_count: int, start: Optional[StateVector] = None
) -> LoopDecomposition:
    """
    按状态向量重复切出同步循环（时间顺序的循环擦除）

    Args:
        edges: 幂自动机中的一条运行
        state_count: 底层自动机的状态数 |Q|
        start: 起始向量，默认取第一条边的源向量

    Raises:
        TooShortError: 运行长度小于 |Q|^m
    """
    if start is None:
        if not edges:
            raise TooShortError("空运行无法切出循环")
        start = edges[0].source
    m = len(start)
    if len(edges) < state_count ** m:
        raise TooShortError(f"运行长度 {len(edges)} 小于 |Q|^m = {state_count ** m}")
    vectors = run_vectors(edges, start)
    backbone: List[int] = []
    where: Dict[StateVector, int] = {}
    loops: List[Tuple[int, int]] = []
    for t, vector in enumerate(vectors):
        if vector in where:
            keep = where[vector]
            s = backbone[keep]
            # 新循环包含其间已记录的循环
            while loops and loops[-1][0] >= s:
                loops.pop()
            loops.append((s, t))
            for dropped in backbone[keep + 1:]:
                del where[vectors[dropped]]
            del backbone[keep + 1:]
        else:
            where[vector] = len(backbone)
            backbone.append(t)
    return LoopDecomposition(vectors, loops)


# ---------------------------------------------------------------- 状态拆分


@dataclass
class SplitWitness:
    """
    拆分见证：输入单词 u = w·v_τ·w'，每条见证运行在 v_τ 上回到同一状态，
    参考运行与大延迟运行之间的延迟在 v_τ 前后不同
    """

    word: Word
    start: int  # v_τ 在 u 中的起始位置
    end: int  # v_τ 的结束位置（不含）
    reference: WeightedPair
    large: WeightedPair
    runs: Dict[WeightedPair, WitnessRun]

    @property
    def prefix(self) -> Word:
        return self.word[: self.start]

    @property
    def loop(self) -> Word:
        return self.word[self.start : self.end]

    @property
    def suffix(self) -> Word:
        return self.word[self.end :]


def _delay_changes(
    automaton: WeightedAutomaton,
    first: List[GroupElement],
    second: List[GroupElement],
    start: int,
    end: int,
) -> bool:
    """两条运行的累计权重序列在 [start, end) 循环前后延迟是否改变"""
    ctx = automaton.context
    return ctx.delay(first[start], second[start]) != ctx.delay(first[end], second[end])


def split_state(
    automaton: WeightedAutomaton,
    subset: SubsetState,
    access_word: Sequence[str],
    threshold: int,
) -> Tuple[SubsetState, SubsetState, SplitWitness]:
    """
    把延迟过大的子集状态拆成 S'（相对参考运行延迟不变）与 S''（其余）

    Args:
        automaton: 加权自动机
        subset: 通过 access_word 可达的子集状态
        access_word: 访问单词
        threshold: 延迟阈值

    Returns:
        (S', S'', 见证)

    Raises:
        NoLargeDelayError: 没有范数超过阈值的对
        SplitNotFoundError: 访问单词上找不到改变延迟的同步循环
    """
    ctx = automaton.context
    pairs = subset.sorted_pairs(automaton)
    large = next((p for p in pairs if ctx.norm(p[1]) > threshold), None)
    if large is None:
        raise NoLargeDelayError(f"子集状态中没有范数超过 {threshold} 的延迟")
    reference = next((p for p in pairs if ctx.is_identity(p[1])), None)
    if reference is None:
        raise SplitNotFoundError("子集状态中没有单位延迟的对")

    word = tuple(access_word)
    runs = witness_runs(automaton, word, subset)

    # accumulated[p][i]: 运行 p 读完前 i 个字母时的累计权重（含初始权重）
    accumulated: Dict[WeightedPair, List[GroupElement]] = {}
    for pair in pairs:
        run = runs[pair]
        values = [run.initial[1]]
        for t in run.transitions:
            values.append(ctx.op(values[-1], t.weight))
        accumulated[pair] = values

    edges = [
        PowerEdge(word[i], tuple(runs[pair].transitions[i] for pair in pairs))
        for i in range(len(word))
    ]
    start_vector = tuple(runs[pair].initial[0] for pair in pairs)
    vectors = run_vectors(edges, start_vector)

    # 先试循环擦除得到的循环，再按位置枚举其余的向量重复
    candidates: List[Tuple[int, int]] = []
    try:
        candidates.extend(split_run_loops(edges, len(automaton.states), start_vector).loops)
    except TooShortError:
        pass
    tried = set(candidates)
    for s in range(len(vectors)):
        for t in range(s + 1, len(vectors)):
            if vectors[s] == vectors[t] and (s, t) not in tried:
                candidates.append((s, t))

    for s, t in candidates:
        if not _delay_changes(automaton, accumulated[reference], accumulated[large], s, t):
            continue
        same = [
            pair
            for pair in pairs
            if not _delay_changes(automaton, accumulated[reference], accumulated[pair], s, t)
        ]
        kept = SubsetState(frozenset(same))
        rest = SubsetState(subset.pairs - kept.pairs)
        witness = SplitWitness(word, s, t, reference, large, runs)
        return kept, rest, witness
    raise SplitNotFoundError(
        f"访问单词 {format_word(word)!r} 上没有改变参考运行与大延迟运行之间延迟的循环"
    )


# ---------------------------------------------------------------- 嫁接


def stitch(
    fragment: ExploredFragment, parts: Dict[SubsetState, List[WeightedAutomaton]]
) -> List[WeightedAutomaton]:
    """
    把各边界状态的顺序子机器嫁接到片段 U 的副本上

    第 i 个机器 V̄_i 由 U 的一份副本和每个边界状态 F 的第 i 个子机器组成；
    进入 F 的转移改为以 α·ι 进入子机器的初始状态，ι 为子机器的初始权重。
    子机器不足 i 个的边界在 V̄_i 中没有转移。

    Args:
        fragment: 已探索片段
        parts: 边界状态到其顺序子机器列表的映射

    Returns:
        max(1, 最多子机器数) 个顺序自动机
    """
    base = fragment.automaton
    ctx = base.context
    inside = set(fragment.states)
    count = max([1] + [len(machines) for machines in parts.values()])
    names = fragment.names
    machines: List[WeightedAutomaton] = []
    for i in range(count):
        states = [names[s] for s in fragment.states]
        final = [(names[s], w) for s in fragment.states for w in fragment.final_pairs(s)]
        transitions: List[Transition] = []
        grafted: Dict[SubsetState, Tuple[str, GroupElement]] = {}
        for subset, machines_for in parts.items():
            if i >= len(machines_for):
                continue
            part = machines_for[i]
            prefix = f"{names[subset]}/"
            entry, iota = next(iter(part.initial))
            grafted[subset] = (prefix + entry, iota)
            states.extend(prefix + q for q in part.states)
            final.extend((prefix + q, w) for q, w in part.final)
            transitions.extend(
                Transition(prefix + t.src, t.letter, t.weight, prefix + t.dst)
                for t in part.transitions
            )
        for src, letter, output, dst in fragment.transitions:
            if src not in inside:
                continue
            if dst in inside:
                transitions.append(Transition(names[src], letter, output, names[dst]))
            elif dst in grafted:
                entry, iota = grafted[dst]
                transitions.append(Transition(names[src], letter, ctx.op(output, iota), entry))
        machines.append(
            WeightedAutomaton.build(
                ctx,
                base.alphabet,
                states,
                [(names[fragment.initial], ctx.identity)],
                final,
                transitions,
            )
        )
    return machines


# ---------------------------------------------------------------- 分解


class _ThresholdTooSmall(Exception):
    """当前阈值下无法完成分解，需要提高阈值"""


@dataclass
class SplitRecord:
    """一次拆分的记录"""

    depth: int
    access_word: Word
    kept: List[List[str]]  # S'
    rest: List[List[str]]  # S''
    ranks: Tuple[int, int]


@dataclass
class DecompositionResult:
    """decompose_k 的结果"""

    machines: List[WeightedAutomaton]
    k: int
    threshold: int = 0
    escalations: int = 0
    oracle_len: int = 0
    splits: List[SplitRecord] = field(default_factory=list)
    btp: Optional[BtpResult] = None

    def union(self) -> Optional[WeightedAutomaton]:
        return union_many(self.machines) if self.machines else None


class Decomposer(BaseAnalyzer):
    """k 顺序分解器"""

    def __init__(self, config: Optional[AnalysisConfig] = None):
        super().__init__(config)
        self._checker = self._share_callbacks(BtpChecker(self.config))
        self._explorer = self._share_callbacks(SubsetConstruction(self.config))
        self._ranks: Dict[Tuple, BtpResult] = {}
        self._splits: List[SplitRecord] = []

    def set_log_callback(self, callback) -> None:
        super().set_log_callback(callback)
        self._share_callbacks(self._checker)
        self._share_callbacks(self._explorer)

    def set_cancel_flag(self, cancel_flag) -> None:
        super().set_cancel_flag(cancel_flag)
        self._share_callbacks(self._checker)
        self._share_callbacks(self._explorer)

    def practical_threshold(self, automaton: WeightedAutomaton) -> int:
        factor = self.config.decomposition.threshold_factor
        return max(1, factor * mw_constant(automaton) * len(automaton.states))

    def decompose(
        self, automaton: WeightedAutomaton, k: int, threshold: Optional[int] = None
    ) -> DecompositionResult:
        """
        构造至多 k 个顺序自动机，其并与 W 等价

        Args:
            automaton: 加权自动机
            k: 阶数
            threshold: 起始阈值，None 时取实用阈值

        Returns:
            DecompositionResult

        Raises:
            BtpViolatedError: W 不满足 BTP-k
            BudgetExceededError: 阈值翻倍次数用尽仍未通过等价校验
        """
        if k < 1:
            raise ValueError("阶数 k 必须为正整数")
        budget = self.config.decomposition
        trimmed = trim(automaton)
        if trimmed.is_empty():
            return DecompositionResult([], k, oracle_len=budget.oracle_len)

        btp = self._checker.check(trimmed, k)
        if btp.fails:
            raise BtpViolatedError(f"自动机不满足 BTP-{k}", btp.counterexample)
        if btp.inconclusive:
            self.log(f"BTP-{k} 未能判定（{btp.message}），继续分解并以等价校验为准")

        if threshold is None:
            threshold = self.practical_threshold(trimmed)
        for escalation in range(budget.max_escalations + 1):
            if self._is_cancelled():
                raise BudgetExceededError("分解已取消")
            self._splits = []
            self.log(f"分解阈值 {threshold}")
            try:
                machines = self._decompose(trimmed, k, threshold, 0)
            except _ThresholdTooSmall as e:
                self.log(f"阈值 {threshold} 不足: {e}")
                threshold *= 2
                continue
            problem = self.validate(trimmed, machines, k)
            if problem is None:
                return DecompositionResult(
                    machines,
                    k,
                    threshold,
                    escalation,
                    budget.oracle_len,
                    list(self._splits),
                    btp,
                )
            self.log(f"阈值 {threshold} 的结果未通过校验: {problem}")
            threshold *= 2
        raise BudgetExceededError(
            f"阈值翻倍 {budget.max_escalations} 次后仍未得到等价的分解"
        )

    def validate(
        self, automaton: WeightedAutomaton, machines: List[WeightedAutomaton], k: int
    ) -> Optional[str]:
        """返回问题描述，通过时返回 None"""
        if len(machines) > k:
            return f"得到 {len(machines)} 个机器，多于 {k}"
        for i, machine in enumerate(machines):
            if not is_structurally_sequential(machine):
                return f"第 {i + 1} 个机器不是顺序的"
        length = self.config.decomposition.oracle_len
        word = find_distinguishing_word(union_many(machines), automaton, length)
        if word is not None:
            return f"单词 {format_word(word) or 'ε'!r} 上输出不同"
        return None

    def _sequential(self, automaton: WeightedAutomaton, threshold: int) -> WeightedAutomaton:
        """k = 1 的基本情形：在阈值内完整探索 D_W（即 sequentialize_btp1）"""
        fragment = self._explorer.explore(automaton, threshold)
        if fragment.frontier:
            raise _ThresholdTooSmall(
                f"顺序化在单词 {format_word(fragment.access[fragment.frontier[0]])!r} 上越过阈值"
            )
        return fragment.to_automaton()

    def _check(self, automaton: WeightedAutomaton, k: int) -> BtpResult:
        key = (automaton, k)
        result = self._ranks.get(key)
        if result is None:
            try:
                result = self._checker.check(automaton, k)
            except NotPositiveError as e:
                # 拆分得到的初始延迟可能含逆字母
                result = BtpResult(k, BtpStatus.INCONCLUSIVE, message=str(e))
            self._ranks[key] = result
        return result

    def _solve_part(
        self, automaton: WeightedAutomaton, limit: int, threshold: int, depth: int
    ) -> Tuple[int, List[WeightedAutomaton]]:
        """找最小的 k' ≤ limit 使 W_X 可分解，返回 (k', 机器列表)"""
        automaton = trim(automaton)
        if automaton.is_empty():
            return 0, []
        for rank in range(1, limit + 1):
            result = self._check(automaton, rank)
            if result.fails:
                continue
            try:
                return rank, self._decompose(automaton, rank, threshold, depth + 1)
            except _ThresholdTooSmall:
                if result.holds:
                    raise
        raise _ThresholdTooSmall(f"拆分后的部分在 k' ≤ {limit} 内不可分解")

    def _decompose(
        self, automaton: WeightedAutomaton, k: int, threshold: int, depth: int
    ) -> List[WeightedAutomaton]:
        if k == 1:
            return [self._sequential(automaton, threshold)]
        fragment = self._explorer.explore(automaton, threshold)
        if not fragment.frontier:
            return [fragment.to_automaton()]

        parts: Dict[SubsetState, List[WeightedAutomaton]] = {}
        for subset in fragment.frontier:
            if self._is_cancelled():
                raise BudgetExceededError("分解已取消")
            access = fragment.access[subset]
            try:
                kept, rest, _ = split_state(automaton, subset, access, threshold)
            except SplitNotFoundError as e:
                raise _ThresholdTooSmall(str(e)) from None
            first_rank, first = self._solve_part(
                restrict_initial(automaton, kept.pairs), k - 1, threshold, depth
            )
            second_rank, second = self._solve_part(
                restrict_initial(automaton, rest.pairs), k - max(first_rank, 1), threshold, depth
            )
            self._splits.append(
                SplitRecord(
                    depth,
                    access,
                    kept.label(automaton),
                    rest.label(automaton),
                    (first_rank, second_rank),
                )
            )
            self.log(
                f"拆分 {fragment.names[subset]} ({format_word(access)}): "
                f"秩 {first_rank} + {second_rank}"
            )
            parts[subset] = first + second
        return stitch(fragment, parts)


def decompose_k(
    automaton: WeightedAutomaton,
    k: int,
    config: Optional[AnalysisConfig] = None,
    threshold: Optional[int] = None,
) -> List[WeightedAutomaton]:
    """把满足 BTP-k 的 W 分解为至多 k 个顺序自动机"""
    return Decomposer(config).decompose(automaton, k, threshold).machines


def partition_outputs_agree(
    automaton: WeightedAutomaton,
    subset: SubsetState,
    kept: SubsetState,
    rest: SubsetState,
    length: int,
) -> bool:
    """eval(W_S, w) = eval(W_S', w) ∪ eval(W_S'', w) 对所有 |w| ≤ length 成立"""
    whole = evaluate_all(restrict_initial(automaton, subset.pairs), length)
    left = evaluate_all(restrict_initial(automaton, kept.pairs), length)
    right = evaluate_all(restrict_initial(automaton, rest.pairs), length)
    return all(
        outputs == kept_out | rest_out
        for (_, outputs), (_, kept_out), (_, rest_out) in zip(whole, left, right)
    )

