"""
分支孪生性质的结果类型

- RunSegment: 运行片段（输入单词 + 所走的转移）
- BtpCounterexample: 违反 BTP-k 的反例：k+1 条运行，每条运行 m 个片段 u_{i,j} 和循环 v_{i,j}
- Skeleton: 反例的骨架（状态向量、共享输入的最后循环 χ、相邻运行的分叉标记 η）
- BtpResult / DegreeResult: 三值结果
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Set, Tuple

from core.analysis_config import BudgetMode
from core.automaton.model import Transition, WeightedAutomaton, WeightedPair
from core.group import GroupElement
from utils.words import Word, format_word

RunPair = Tuple[int, int]


class BtpStatus(Enum):
    """三值判定结果"""

    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


class Evidence(Enum):
    """一对运行在循环上延迟改变的依据"""

    WEIGHT = "weight"  # 交换群：两条循环权重不同
    LENGTH = "length"  # 转换器：循环输出长度不同
    MISMATCH = "mismatch"  # 转换器：累计输出出现不匹配


@dataclass(frozen=True)
class RunSegment:
    """运行的一段"""

    word: Word
    transitions: Tuple[Transition, ...]

    @classmethod
    def empty(cls) -> "RunSegment":
        return cls((), ())

    def weight(self, automaton: WeightedAutomaton) -> GroupElement:
        return automaton.context.product(t.weight for t in self.transitions)

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class Separation:
    """运行 j 与 j' 在第 loop 个循环（从 1 开始）上延迟改变"""

    j: int
    j2: int
    loop: int
    evidence: Evidence


@dataclass
class BtpCounterexample:
    """
    BTP-k 的反例

    segments[j][i] 是 u_{i+1,j}，loops[j][i] 是 v_{i+1,j}。
    循环数 m 可以大于 k（BTP-k' 形式），搜索给出的反例恰好有 k 个循环。
    """

    k: int
    initial: List[WeightedPair]
    segments: List[List[RunSegment]]
    loops: List[List[RunSegment]]
    separations: List[Separation] = field(default_factory=list)

    @property
    def run_count(self) -> int:
        return len(self.initial)

    @property
    def loop_count(self) -> int:
        return len(self.loops[0]) if self.loops else 0

    def states(self, j: int) -> List[str]:
        """运行 j 经过的状态 q_{0,j}, q_{1,j}, ..., q_{m,j}"""
        current = self.initial[j][0]
        result = [current]
        for segment in self.segments[j]:
            if segment.transitions:
                current = segment.transitions[-1].dst
            result.append(current)
        return result

    def describe(self, automaton: WeightedAutomaton) -> str:
        """结构化文本形式，逐条运行列出 u_{i,j}, v_{i,j} 及其权重"""
        ctx = automaton.context
        lines = [f"BTP-{self.k} counterexample: {self.run_count} runs, {self.loop_count} loops"]
        for j in range(self.run_count):
            state, gamma = self.initial[j]
            lines.append(f"run {j}: start ({state}, {ctx.format(gamma)})")
            for i, (segment, loop) in enumerate(zip(self.segments[j], self.loops[j]), start=1):
                states = self.states(j)
                lines.append(
                    f"  u[{i},{j}] = {format_word(segment.word) or 'ε'} "
                    f"/ {ctx.format(segment.weight(automaton))} -> {states[i]}; "
                    f"v[{i},{j}] = {format_word(loop.word) or 'ε'} "
                    f"/ {ctx.format(loop.weight(automaton))}"
                )
        for sep in self.separations:
            lines.append(
                f"runs {sep.j},{sep.j2}: delay changes at loop {sep.loop} ({sep.evidence.value})"
            )
        return "\n".join(lines)


@dataclass
class Skeleton:
    """
    反例骨架

    state_vectors[i] = (q_{i,0}, ..., q_{i,k})；chi[(j, j')] 是 j 与 j' 共享输入的最后循环；
    eta[i] 是在第 i 个循环之后分叉的相邻运行对；diff_loop[(j, j')] 是延迟改变的循环。
    """

    k: int
    m: int
    state_vectors: List[Tuple[str, ...]]
    chi: Dict[RunPair, int]
    eta: Dict[int, Set[RunPair]]
    diff_loop: Dict[RunPair, int]

    def is_consistent(self) -> bool:
        """diff_loop 不超过 χ，且 χ 由相邻运行对线性编码"""
        for pair, loop in self.diff_loop.items():
            if loop < 1 or loop > self.chi.get(pair, 0):
                return False
        runs = len(self.state_vectors[0]) if self.state_vectors else 0
        for j in range(runs):
            for j2 in range(j + 1, runs):
                adjacent = min(self.chi[(t, t + 1)] for t in range(j, j2))
                if self.chi[(j, j2)] != adjacent:
                    return False
        return True

    def summary(self) -> str:
        parts = [f"skeleton: k={self.k}, m={self.m}"]
        for i, vector in enumerate(self.state_vectors):
            parts.append(f"  q[{i}] = ({', '.join(vector)})")
        for i in sorted(self.eta):
            if self.eta[i]:
                pairs = ", ".join(f"{a}|{b}" for a, b in sorted(self.eta[i]))
                parts.append(f"  branch after loop {i}: {pairs}")
        return "\n".join(parts)


def _shared_until(cex: BtpCounterexample, j: int, j2: int) -> int:
    shared = 0
    for i in range(cex.loop_count):
        if (
            cex.segments[j][i].word != cex.segments[j2][i].word
            or cex.loops[j][i].word != cex.loops[j2][i].word
        ):
            break
        shared = i + 1
    return shared


def skeleton_of(cex: BtpCounterexample) -> Skeleton:
    """从反例导出骨架"""
    runs = cex.run_count
    m = cex.loop_count
    per_run = [cex.states(j) for j in range(runs)]
    state_vectors = [tuple(per_run[j][i] for j in range(runs)) for i in range(m + 1)]
    chi: Dict[RunPair, int] = {}
    for j in range(runs):
        for j2 in range(j + 1, runs):
            chi[(j, j2)] = _shared_until(cex, j, j2)
    eta: Dict[int, Set[RunPair]] = {i: set() for i in range(m + 1)}
    for j in range(runs - 1):
        eta[chi[(j, j + 1)]].add((j, j + 1))
    diff_loop: Dict[RunPair, int] = {}
    for sep in cex.separations:
        pair = (min(sep.j, sep.j2), max(sep.j, sep.j2))
        diff_loop.setdefault(pair, sep.loop)
    return Skeleton(cex.k, m, state_vectors, chi, eta, diff_loop)


@dataclass
class SearchStats:
    """搜索统计"""

    configurations: int = 0  # 探索过的配置数（各阶数之和）
    skeletons: int = 0  # 检查过的候选分叉点数
    orders: List[int] = field(default_factory=list)


@dataclass
class BtpResult:
    """check_btp 的结果"""

    k: int
    status: BtpStatus
    counterexample: Optional[BtpCounterexample] = None
    budget_mode: BudgetMode = BudgetMode.THEORETICAL
    stats: SearchStats = field(default_factory=SearchStats)
    message: str = ""

    @property
    def holds(self) -> bool:
        return self.status is BtpStatus.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is BtpStatus.FAILS

    @property
    def inconclusive(self) -> bool:
        return self.status is BtpStatus.INCONCLUSIVE


@dataclass
class DegreeResult:
    """
    顺序度结果

    degree 为 None 时，lower_bound 是已知下界（全部失败时为 k_max + 1）。
    """

    status: BtpStatus
    degree: Optional[int] = None
    lower_bound: int = 1
    results: List[BtpResult] = field(default_factory=list)

    def __str__(self) -> str:
        if self.degree is not None:
            return str(self.degree)
        return f">={self.lower_bound}"
