"""
反例独立校验

逐条转移重放反例中的运行，再按定义直接重新计算每一对运行的延迟。
不依赖搜索模块的任何代码。
"""

from typing import List

from core.automaton.model import WeightedAutomaton
from core.twinning.skeleton import BtpCounterexample


def counterexample_problems(
    automaton: WeightedAutomaton, cex: BtpCounterexample, k: int = 0
) -> List[str]:
    """
    列出反例的全部问题，空列表表示反例有效

    Args:
        automaton: 加权自动机
        cex: 待校验的反例
        k: 阶数，0 表示使用 cex.k；循环数可以大于 k

    Returns:
        问题描述列表
    """
    ctx = automaton.context
    k = k or cex.k
    problems: List[str] = []
    runs = len(cex.initial)
    if runs != k + 1:
        problems.append(f"需要 {k + 1} 条运行，实际 {runs} 条")
    if len(cex.segments) != runs or len(cex.loops) != runs:
        return problems + ["片段或循环的行数与运行数不一致"]
    m = len(cex.loops[0]) if runs else 0
    if m < k:
        problems.append(f"循环数 {m} 少于 k = {k}")
    transitions = set(automaton.transitions)
    initial = set(automaton.initial)

    # prefix[j][i] = γ_j α_{1,j} ⋯ α_{i,j}，loop_weight[j][i] = β_{i+1,j}
    prefix = []
    loop_weight = []
    for j in range(runs):
        if cex.initial[j] not in initial:
            problems.append(f"运行 {j} 的起点不是初始对")
        if len(cex.segments[j]) != m or len(cex.loops[j]) != m:
            problems.append(f"运行 {j} 的片段数不是 {m}")
            return problems
        state, gamma = cex.initial[j]
        accumulated = gamma
        row = [accumulated]
        betas = []
        for i in range(m):
            for name, part in (("u", cex.segments[j][i]), ("v", cex.loops[j][i])):
                start = state
                if len(part.word) != len(part.transitions):
                    problems.append(f"{name}[{i + 1},{j}] 的单词与转移数不一致")
                weight = ctx.identity
                for letter, t in zip(part.word, part.transitions):
                    if t not in transitions:
                        problems.append(f"{name}[{i + 1},{j}] 使用了不存在的转移 {t}")
                    if t.src != state or t.letter != letter:
                        problems.append(f"{name}[{i + 1},{j}] 的转移没有首尾相接")
                    state = t.dst
                    weight = ctx.op(weight, t.weight)
                if name == "u":
                    accumulated = ctx.op(accumulated, weight)
                    row.append(accumulated)
                else:
                    if state != start:
                        problems.append(f"v[{i + 1},{j}] 没有回到 {start}")
                    betas.append(weight)
        prefix.append(row)
        loop_weight.append(betas)
    if problems:
        return problems

    for j in range(runs):
        for j2 in range(j + 1, runs):
            separated = False
            for i in range(m):
                if (
                    cex.segments[j][i].word != cex.segments[j2][i].word
                    or cex.loops[j][i].word != cex.loops[j2][i].word
                ):
                    break
                before = ctx.op(ctx.inverse(prefix[j][i + 1]), prefix[j2][i + 1])
                after = ctx.op(
                    ctx.inverse(ctx.op(prefix[j][i + 1], loop_weight[j][i])),
                    ctx.op(prefix[j2][i + 1], loop_weight[j2][i]),
                )
                if before != after:
                    separated = True
                    break
            if not separated:
                problems.append(f"运行 {j} 与 {j2} 在共享输入的循环上延迟都不变")
    return problems


def verify_counterexample(
    automaton: WeightedAutomaton, cex: BtpCounterexample, k: int = 0
) -> bool:
    """反例是否确实违反 BTP-k"""
    return not counterexample_problems(automaton, cex, k)
