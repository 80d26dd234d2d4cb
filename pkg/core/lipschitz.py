"""
k 阶 Lipschitz 性质模块

Lip-k：⟦W⟧ 中任意 k+1 个 (单词, 权重) 对里总有两个满足
d(α_i, α_j) ≤ L·(dist(w_i, w_j) + 1)。本模块不判定 Lip-k，只提供：
- verify_lip_witness: 校验一组违反 Lip-k 的见证
- falsify_lipschitz: 把 BTP-k 反例的循环泵大，构造违反 Lip-k 的见证
- find_lip_violation: 在短单词上穷举搜索违反 Lip-k 的见证
- btp_lipschitz_constant: BTP-k 蕴含 Lip-k 时使用的常数
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from core.analysis_config import AnalysisConfig
from core.automaton.model import Transition, WeightedAutomaton, WeightedPair
from core.automaton.operations import evaluate, evaluate_all, mw_constant
from core.base import BaseAnalyzer
from core.errors import InvalidCounterexampleError, PumpLimitExceededError
from core.group import GroupContext, GroupElement, word_dist
from core.twinning.skeleton import BtpCounterexample
from core.twinning.verifier import counterexample_problems
from utils.words import Word, format_word

LipPair = Tuple[Word, GroupElement]

# 见证未通过自检时放大阈值的次数
MARGIN_RETRIES = 4


@dataclass
class LipWitness:
    """违反 Lip-k 的 k+1 个 (单词, 权重) 对"""

    L: int
    pairs: List[LipPair]

    @property
    def k(self) -> int:
        return len(self.pairs) - 1

    def margins(self, ctx: GroupContext) -> List[Tuple[int, int, int, int]]:
        """
        每一对的 (j, j', 权重距离, 界 L·(dist+1))
        """
        result = []
        for j in range(len(self.pairs)):
            for j2 in range(j + 1, len(self.pairs)):
                (u, alpha), (v, beta) = self.pairs[j], self.pairs[j2]
                distance = ctx.norm(ctx.delay(alpha, beta))
                result.append((j, j2, distance, self.L * (word_dist(u, v) + 1)))
        return result

    def describe(self, ctx: GroupContext) -> str:
        lines = [f"Lip-{self.k} witness, L = {self.L}"]
        for j, (word, weight) in enumerate(self.pairs):
            text = format_word(word) or "ε"
            if len(text) > 60:
                text = f"{text[:28]}…{text[-28:]} (|w| = {len(word)})"
            lines.append(f"pair {j}: {text} / {ctx.format(weight)}")
        for j, j2, distance, bound in self.margins(ctx):
            lines.append(f"pairs {j},{j2}: distance {distance} > {bound}")
        return "\n".join(lines)


def verify_lip_witness(
    automaton: WeightedAutomaton, witness: LipWitness, length_bound: Optional[int] = None
) -> bool:
    """
    校验见证：每个对都属于 ⟦W⟧，且任意两对都违反 Lipschitz 界

    Args:
        automaton: 加权自动机
        witness: 待校验的见证
        length_bound: 单词长度上限，超过时视为校验失败（None 表示不限）

    Returns:
        见证是否有效
    """
    if len(witness.pairs) < 2:
        return False
    for word, weight in witness.pairs:
        if length_bound is not None and len(word) > length_bound:
            return False
        if weight not in evaluate(automaton, word):
            return False
    return all(distance > bound for _, _, distance, bound in witness.margins(automaton.context))


def btp_lipschitz_constant(automaton: WeightedAutomaton, k: int) -> int:
    """满足 BTP-k 时 Lip-k 成立的常数 2·M_W·((k+1)·|Q|^{k+1} + 1)"""
    n = len(automaton.states)
    return 2 * mw_constant(automaton) * ((k + 1) * n ** (k + 1) + 1)


def _shortest_completion(
    automaton: WeightedAutomaton, state: str
) -> Optional[Tuple[List[Transition], WeightedPair]]:
    """从 state 到终止状态的最短路径（按规范顺序的广度优先搜索），以及最小的终止对"""
    finals: Dict[str, List[WeightedPair]] = {}
    for pair in automaton.sorted_final():
        finals.setdefault(pair[0], []).append(pair)
    parent: Dict[str, Optional[Transition]] = {state: None}
    queue = deque([state])
    while queue:
        current = queue.popleft()
        if current in finals:
            path: List[Transition] = []
            cursor = current
            while parent[cursor] is not None:
                t = parent[cursor]
                path.append(t)  # type: ignore[arg-type]
                cursor = t.src  # type: ignore[union-attr]
            path.reverse()
            return path, finals[current][0]
        for letter in automaton.alphabet:
            for t in automaton.outgoing(current, letter):
                if t.dst not in parent:
                    parent[t.dst] = t
                    queue.append(t.dst)
    return None


class LipschitzFalsifier(BaseAnalyzer):
    """由 BTP-k 反例构造违反 Lip-k 的见证"""

    def falsify(
        self, automaton: WeightedAutomaton, cex: BtpCounterexample, L: int
    ) -> LipWitness:
        """
        按循环从后往前选择泵次数 t_i，使在第 i 个循环上分开的每一对运行的延迟范数
        超过 2·L_i·(M_W + L') + L' 再加上补全后缀的权重余量，L' = L·(2|Q| + 1)，
        L_i 为第 i 个循环之后的最长后缀。随后把每条运行补全为接受运行。

        Args:
            automaton: 加权自动机
            cex: 已通过校验的 BTP-k 反例
            L: Lipschitz 常数

        Returns:
            通过 verify_lip_witness 的见证

        Raises:
            InvalidCounterexampleError: 反例未通过重放校验或无法补全
            PumpLimitExceededError: 泵次数超过 lip_pump_limit，不再放大余量重试
        """
        if L < 0:
            raise ValueError("L 必须非负")
        problems = counterexample_problems(automaton, cex)
        if problems:
            raise InvalidCounterexampleError("反例未通过校验: " + "; ".join(problems))

        for attempt in range(MARGIN_RETRIES):
            witness = self._build(automaton, cex, L, 1 << attempt)
            if verify_lip_witness(automaton, witness):
                self.log(f"Lip-{cex.k} 见证构造完成 (L = {L})")
                return witness
            self.log(f"见证未通过自检，放大余量后重试 ({attempt + 1}/{MARGIN_RETRIES})")
        raise InvalidCounterexampleError("放大余量后见证仍未通过校验")

    def _build(
        self, automaton: WeightedAutomaton, cex: BtpCounterexample, L: int, scale: int
    ) -> LipWitness:
        ctx = automaton.context
        runs = cex.run_count
        m = cex.loop_count
        n = len(automaton.states)
        mw = mw_constant(automaton)
        inflated = L * (2 * n + 1)
        completion_slack = 2 * mw * (n + 1)

        entry_delays, separated_at = self._separations(automaton, cex)
        counts = [0] * m
        for i in reversed(range(m)):
            pairs = separated_at.get(i, [])
            if not pairs:
                continue
            suffix = max(
                sum(
                    len(cex.segments[j][i2]) + counts[i2] * len(cex.loops[j][i2])
                    for i2 in range(i + 1, m)
                )
                for j in range(runs)
            )
            threshold = scale * (2 * suffix * (mw + inflated) + inflated + completion_slack)
            counts[i] = self._pump_count(automaton, cex, i, pairs, entry_delays, threshold)
            self.log(f"循环 {i + 1}: 阈值 {threshold}, 泵次数 {counts[i]}")

        pairs_out: List[LipPair] = []
        for j in range(runs):
            state, gamma = cex.initial[j]
            word: List[str] = []
            weights: List[GroupElement] = [gamma]
            for i in range(m):
                segment, loop = cex.segments[j][i], cex.loops[j][i]
                word.extend(segment.word)
                weights.append(segment.weight(automaton))
                if counts[i] and loop.word:
                    word.extend(loop.word * counts[i])
                    weights.append(ctx.power(loop.weight(automaton), counts[i]))
            end = cex.states(j)[-1]
            completion = _shortest_completion(automaton, end)
            if completion is None:
                raise InvalidCounterexampleError(f"运行 {j} 在 {end} 处无法补全为接受运行")
            path, (_, phi) = completion
            word.extend(t.letter for t in path)
            weights.extend(t.weight for t in path)
            weights.append(phi)
            pairs_out.append((tuple(word), ctx.product(weights)))
        return LipWitness(L, pairs_out)

    @staticmethod
    def _separations(
        automaton: WeightedAutomaton, cex: BtpCounterexample
    ) -> Tuple[Dict[Tuple[int, int], GroupElement], Dict[int, List[Tuple[int, int]]]]:
        """
        每一对运行第一次在共享输入的循环上延迟改变的位置，以及进入该循环前的延迟
        """
        ctx = automaton.context
        runs = cex.run_count
        m = cex.loop_count
        prefixes = []
        for j in range(runs):
            accumulated = cex.initial[j][1]
            row = []
            for i in range(m):
                accumulated = ctx.op(accumulated, cex.segments[j][i].weight(automaton))
                row.append(accumulated)
                accumulated = ctx.op(accumulated, cex.loops[j][i].weight(automaton))
            prefixes.append(row)

        entry: Dict[Tuple[int, int], GroupElement] = {}
        separated_at: Dict[int, List[Tuple[int, int]]] = {}
        for j in range(runs):
            for j2 in range(j + 1, runs):
                for i in range(m):
                    if (
                        cex.segments[j][i].word != cex.segments[j2][i].word
                        or cex.loops[j][i].word != cex.loops[j2][i].word
                    ):
                        break
                    before = ctx.delay(prefixes[j][i], prefixes[j2][i])
                    after = ctx.delay(
                        ctx.op(prefixes[j][i], cex.loops[j][i].weight(automaton)),
                        ctx.op(prefixes[j2][i], cex.loops[j2][i].weight(automaton)),
                    )
                    if before != after:
                        entry[(j, j2)] = before
                        separated_at.setdefault(i, []).append((j, j2))
                        break
        return entry, separated_at

    def _pump_count(
        self,
        automaton: WeightedAutomaton,
        cex: BtpCounterexample,
        i: int,
        pairs: Sequence[Tuple[int, int]],
        entry_delays: Dict[Tuple[int, int], GroupElement],
        threshold: int,
    ) -> int:
        """倍增搜索使所有 pairs 的泵后延迟范数都超过 threshold 的次数"""
        ctx = automaton.context
        limit = self.config.lip_pump_limit
        t = 1
        while t <= limit:
            if self._is_cancelled():
                raise PumpLimitExceededError("泵次数搜索已取消")
            if all(
                ctx.norm(
                    ctx.op(
                        ctx.op(
                            ctx.power(ctx.inverse(cex.loops[j][i].weight(automaton)), t),
                            entry_delays[(j, j2)],
                        ),
                        ctx.power(cex.loops[j2][i].weight(automaton), t),
                    )
                )
                > threshold
                for j, j2 in pairs
            ):
                return t
            t *= 2
        raise PumpLimitExceededError(f"循环 {i + 1} 的泵次数超过上限 {limit}")

    def find_violation(
        self, automaton: WeightedAutomaton, k: int, L: int, length_bound: int
    ) -> Optional[LipWitness]:
        """
        在长度不超过 length_bound 的单词上穷举搜索违反 Lip-k 的 k+1 个对

        以 "距离超过界" 为边构造图，按规范顺序回溯搜索 k+1 团。
        """
        ctx = automaton.context
        pairs: List[LipPair] = []
        for word, outputs in evaluate_all(automaton, length_bound):
            for weight in sorted(outputs):
                pairs.append((word, weight))
        self.log(f"Lip-{k} 搜索: {len(pairs)} 个 (单词, 权重) 对")

        far: List[Set[int]] = [set() for _ in pairs]
        for a in range(len(pairs)):
            u, alpha = pairs[a]
            for b in range(a + 1, len(pairs)):
                v, beta = pairs[b]
                if ctx.norm(ctx.delay(alpha, beta)) > L * (word_dist(u, v) + 1):
                    far[a].add(b)
                    far[b].add(a)

        def extend(clique: List[int], candidates: List[int]) -> Optional[List[int]]:
            if len(clique) == k + 1:
                return clique
            for index, c in enumerate(candidates):
                if self._is_cancelled():
                    return None
                rest = [d for d in candidates[index + 1:] if d in far[c]]
                if len(clique) + 1 + len(rest) < k + 1:
                    continue
                found = extend(clique + [c], rest)
                if found is not None:
                    return found
            return None

        clique = extend([], list(range(len(pairs))))
        if clique is None:
            return None
        return LipWitness(L, [pairs[c] for c in clique])


def falsify_lipschitz(
    automaton: WeightedAutomaton,
    cex: BtpCounterexample,
    L: int,
    config: Optional[AnalysisConfig] = None,
) -> LipWitness:
    """由 BTP-k 反例构造违反 Lip-k 的见证"""
    return LipschitzFalsifier(config).falsify(automaton, cex, L)


def find_lip_violation(
    automaton: WeightedAutomaton,
    k: int,
    L: int,
    length_bound: int,
    config: Optional[AnalysisConfig] = None,
) -> Optional[LipWitness]:
    """穷举搜索违反 Lip-k 的见证，找不到时返回 None"""
    return LipschitzFalsifier(config).find_violation(automaton, k, L, length_bound)
