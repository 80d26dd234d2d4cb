"""
加权自动机运算模块

提供集合语义下的求值、修剪、并、结构检查和穷举等价校验。

功能：
- evaluate: 对单词求值，返回全部接受运行的输出集合
- trim: 只保留位于某条接受运行上的状态
- union / union_many: 不相交并
- mw_constant / out_max: 常数 M_W 与 OutMax
- valuedness_estimate: 在有限长度内估计值数 ℓ
- is_structurally_sequential / is_structurally_k_sequential: 结构顺序性检查
- equiv_up_to / find_distinguishing_word: 有界长度的穷举等价校验
- enumerate_runs: 枚举单词上的全部接受运行
- restrict_initial / concatenate / kleene_separator: 构造辅助
"""

from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from core.automaton.model import (
    Run,
    Transition,
    WeightedAutomaton,
    WeightedPair,
    empty_automaton,
)
from core.errors import (
    AlphabetMismatchError,
    ContextMismatchError,
    DeadEndError,
    EmptyAutomatonError,
    InvalidAutomatonError,
)
from core.group import GroupElement
from utils.words import Word

# 求值过程中的配置: (当前状态, 已累积的权重)
Configuration = Tuple[str, GroupElement]


def _final_map(automaton: WeightedAutomaton) -> Dict[str, List[GroupElement]]:
    finals: Dict[str, List[GroupElement]] = {}
    for state, weight in automaton.final:
        finals.setdefault(state, []).append(weight)
    return finals


def initial_configurations(automaton: WeightedAutomaton) -> FrozenSet[Configuration]:
    return frozenset(automaton.initial)


def step_configurations(
    automaton: WeightedAutomaton, configs: Iterable[Configuration], letter: str
) -> FrozenSet[Configuration]:
    """读入一个字母后的配置集合"""
    ctx = automaton.context
    result: Set[Configuration] = set()
    for state, weight in configs:
        for t in automaton.outgoing(state, letter):
            result.add((t.dst, ctx.op(weight, t.weight)))
    return frozenset(result)


def output_of(
    automaton: WeightedAutomaton,
    configs: Iterable[Configuration],
    finals: Optional[Dict[str, List[GroupElement]]] = None,
) -> FrozenSet[GroupElement]:
    """配置集合在终止关系下的输出"""
    ctx = automaton.context
    finals = _final_map(automaton) if finals is None else finals
    return frozenset(
        ctx.op(weight, phi) for state, weight in configs for phi in finals.get(state, ())
    )


def evaluate(automaton: WeightedAutomaton, word: Sequence[str]) -> FrozenSet[GroupElement]:
    """
    对单词求值

    广度优先地推进 (状态, 权重) 配置集合，重复的配置自动合并。

    Args:
        automaton: 加权自动机
        word: 输入单词

    Returns:
        { γ_init · 运行权重 · γ_final } 的集合；空自动机返回空集
    """
    automaton.check_word(word)
    configs = initial_configurations(automaton)
    for letter in word:
        if not configs:
            break
        configs = step_configurations(automaton, configs, letter)
    return output_of(automaton, configs)


def evaluate_all(
    automaton: WeightedAutomaton, max_length: int
) -> Iterator[Tuple[Word, FrozenSet[GroupElement]]]:
    """
    按长度、再按字典序对所有长度不超过 max_length 的单词求值

    逐层扩展，共享前缀的配置集合只计算一次。
    """
    finals = _final_map(automaton)
    level: List[Tuple[Word, FrozenSet[Configuration]]] = [((), initial_configurations(automaton))]
    for length in range(max_length + 1):
        for word, configs in level:
            yield word, output_of(automaton, configs, finals)
        if length == max_length:
            break
        next_level = []
        for word, configs in level:
            for letter in automaton.alphabet:
                step = step_configurations(automaton, configs, letter)
                next_level.append((word + (letter,), step))
        level = next_level


def enumerate_runs(automaton: WeightedAutomaton, word: Sequence[str]) -> List[Run]:
    """枚举 word 上从初始状态到终止状态的全部运行（权重不含初始和终止输出）"""
    automaton.check_word(word)
    ctx = automaton.context
    index = {t: i for i, t in enumerate(automaton.transition_list)}
    finals = {q for q, _ in automaton.final}
    runs: List[Run] = []
    for start in automaton.initial_states():
        stack: List[Tuple[str, int, GroupElement, Tuple[int, ...]]] = [
            (start, 0, ctx.identity, ())
        ]
        while stack:
            state, pos, weight, used = stack.pop()
            if pos == len(word):
                if state in finals:
                    runs.append(Run(start, tuple(word), weight, state, used))
                continue
            for t in reversed(automaton.outgoing(state, word[pos])):
                stack.append((t.dst, pos + 1, ctx.op(weight, t.weight), used + (index[t],)))
    runs.sort(key=lambda r: r.transition_indices)
    return runs


def trim(automaton: WeightedAutomaton) -> WeightedAutomaton:
    """
    修剪：保留既可从初始状态到达、又可到达终止状态的状态

    语义保持不变；可能返回空自动机。
    """
    forward: Dict[str, Set[str]] = {}
    backward: Dict[str, Set[str]] = {}
    for t in automaton.transitions:
        forward.setdefault(t.src, set()).add(t.dst)
        backward.setdefault(t.dst, set()).add(t.src)

    def closure(seeds: Iterable[str], edges: Dict[str, Set[str]]) -> Set[str]:
        seen = set(seeds)
        queue = deque(seen)
        while queue:
            state = queue.popleft()
            for nxt in edges.get(state, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen

    reachable = closure((q for q, _ in automaton.initial), forward)
    useful = reachable & closure((q for q, _ in automaton.final), backward)
    return automaton.replace(
        states=[q for q in automaton.states if q in useful],
        initial=[(q, w) for q, w in automaton.initial if q in useful],
        final=[(q, w) for q, w in automaton.final if q in useful],
        transitions=[t for t in automaton.transitions if t.src in useful and t.dst in useful],
    )


def rename_states(automaton: WeightedAutomaton, prefix: str) -> WeightedAutomaton:
    """给所有状态名加前缀"""
    return automaton.replace(
        states=[prefix + q for q in automaton.states],
        initial=[(prefix + q, w) for q, w in automaton.initial],
        final=[(prefix + q, w) for q, w in automaton.final],
        transitions=[
            Transition(prefix + t.src, t.letter, t.weight, prefix + t.dst)
            for t in automaton.transitions
        ],
    )


def _check_compatible(first: WeightedAutomaton, second: WeightedAutomaton) -> None:
    if set(first.alphabet) != set(second.alphabet):
        raise AlphabetMismatchError(
            f"字母表不一致: {list(first.alphabet)} 与 {list(second.alphabet)}"
        )
    if first.context != second.context:
        raise ContextMismatchError(
            f"群不一致: {first.context.tag()} 与 {second.context.tag()}"
        )


def union(first: WeightedAutomaton, second: WeightedAutomaton) -> WeightedAutomaton:
    """两个自动机的不相交并，状态重命名为 1.q 与 2.q"""
    _check_compatible(first, second)
    return union_many([first, second])


def union_many(machines: Sequence[WeightedAutomaton]) -> WeightedAutomaton:
    """
    多个自动机的不相交并

    Args:
        machines: 非空的自动机列表，字母表和群必须一致

    Returns:
        状态重命名为 "i.q" 的并自动机
    """
    if not machines:
        raise InvalidAutomatonError("并运算至少需要一个自动机")
    head = machines[0]
    states: List[str] = []
    initial: List[WeightedPair] = []
    final: List[WeightedPair] = []
    transitions: List[Transition] = []
    for i, machine in enumerate(machines, start=1):
        _check_compatible(head, machine)
        renamed = rename_states(machine, f"{i}.")
        states.extend(renamed.states)
        initial.extend(renamed.initial)
        final.extend(renamed.final)
        transitions.extend(renamed.transitions)
    return head.replace(states=states, initial=initial, final=final, transitions=transitions)


def mw_constant(automaton: WeightedAutomaton) -> int:
    """所有转移、初始和终止权重的最大范数 M_W"""
    ctx = automaton.context
    return max((ctx.norm(w) for w in automaton.weights()), default=0)


def out_max(automaton: WeightedAutomaton) -> int:
    """单个状态上终止对的最大个数 OutMax"""
    counts: Dict[str, int] = {}
    for state, _ in automaton.final:
        counts[state] = counts.get(state, 0) + 1
    return max(counts.values(), default=0)


def valuedness_estimate(
    automaton: WeightedAutomaton,
    length_bound: Optional[int] = None,
    state_cap: Optional[int] = None,
) -> int:
    """
    估计值数 ℓ：长度不超过 length_bound 的单词上输出集合的最大基数

    沿带延迟子集构造逐层推进：规范化只是左乘一个群元素，不改变输出个数，
    因此同一子集状态只需计算一次。

    Args:
        automaton: 修剪后的自动机
        length_bound: 单词长度上限，默认 |Q|²
        state_cap: 探索的子集状态数上限，达到后返回当前估计

    Returns:
        ℓ 的估计值（空关系返回 0）
    """
    from core.determinize import dw_initial, dw_step, subset_outputs

    if length_bound is None:
        length_bound = len(automaton.states) ** 2
    try:
        start = dw_initial(automaton)
    except EmptyAutomatonError:
        return 0
    best = len(subset_outputs(automaton, start, automaton.context.identity))
    seen = {start}
    frontier = [start]
    for _ in range(length_bound):
        next_frontier = []
        for subset in frontier:
            for letter in automaton.alphabet:
                try:
                    _, nxt = dw_step(automaton, subset, letter)
                except DeadEndError:
                    continue
                if nxt in seen:
                    continue
                seen.add(nxt)
                next_frontier.append(nxt)
                best = max(best, len(subset_outputs(automaton, nxt, automaton.context.identity)))
                if state_cap is not None and len(seen) >= state_cap:
                    return best
        if not next_frontier:
            break
        frontier = next_frontier
    return best


def is_structurally_sequential(automaton: WeightedAutomaton) -> bool:
    """恰有一个初始对，且每个 (状态, 字母) 至多一条转移"""
    if len(automaton.initial) != 1:
        return False
    seen: Set[Tuple[str, str]] = set()
    for t in automaton.transitions:
        key = (t.src, t.letter)
        if key in seen:
            return False
        seen.add(key)
    return True


def connected_components(automaton: WeightedAutomaton) -> List[List[str]]:
    """转移图（视为无向图）的连通分量，按状态顺序排列"""
    parent = {q: q for q in automaton.states}

    def find(q: str) -> str:
        while parent[q] != q:
            parent[q] = parent[parent[q]]
            q = parent[q]
        return q

    for t in automaton.transitions:
        a, b = find(t.src), find(t.dst)
        if a != b:
            parent[max(a, b, key=automaton.state_index)] = min(a, b, key=automaton.state_index)
    groups: Dict[str, List[str]] = {}
    for q in automaton.states:
        groups.setdefault(find(q), []).append(q)
    return sorted(groups.values(), key=lambda g: automaton.state_index(g[0]))


def sequential_components(automaton: WeightedAutomaton) -> List[WeightedAutomaton]:
    """按连通分量拆分成子自动机（不检查顺序性）"""
    result = []
    for component in connected_components(automaton):
        members = set(component)
        result.append(
            automaton.replace(
                states=component,
                initial=[(q, w) for q, w in automaton.initial if q in members],
                final=[(q, w) for q, w in automaton.final if q in members],
                transitions=[t for t in automaton.transitions if t.src in members],
            )
        )
    return result


def is_structurally_k_sequential(automaton: WeightedAutomaton) -> Optional[int]:
    """
    结构 k 顺序性检查

    将转移图分解为连通分量，没有初始对的分量不影响语义而被忽略，
    其余分量都必须是结构顺序的。

    Returns:
        分量个数 k；某个分量不是顺序的则返回 None
    """
    count = 0
    for component in sequential_components(automaton):
        if not component.initial:
            continue
        if not is_structurally_sequential(component):
            return None
        count += 1
    return count


def find_distinguishing_word(
    first: WeightedAutomaton, second: WeightedAutomaton, length_bound: int
) -> Optional[Word]:
    """返回两个自动机输出不同的第一个单词（按长度、字典序），都相同则返回 None"""
    _check_compatible(first, second)
    aligned = second.replace(alphabet=first.alphabet)
    for (word, left), (_, right) in zip(
        evaluate_all(first, length_bound), evaluate_all(aligned, length_bound)
    ):
        if left != right:
            return word
    return None


def equiv_up_to(first: WeightedAutomaton, second: WeightedAutomaton, length_bound: int) -> bool:
    """穷举校验：长度不超过 length_bound 的每个单词上输出集合相同"""
    return find_distinguishing_word(first, second, length_bound) is None


def restrict_initial(
    automaton: WeightedAutomaton, pairs: Iterable[WeightedPair]
) -> WeightedAutomaton:
    """把初始关系替换为给定的 (状态, 权重) 集合，得到 W_S"""
    return automaton.replace(initial=list(pairs))


def concatenate(
    first: WeightedAutomaton, second: WeightedAutomaton, separator: str, suffix: str = "'"
) -> WeightedAutomaton:
    """
    用新分隔字母连接两个自动机：W1 · # · W2

    第二个自动机的状态名加 suffix；W1 的每个终止对 (q, α) 与 W2 的每个
    初始对 (p, β) 产生转移 (q, #, α·β, p)。
    """
    if first.context != second.context:
        raise ContextMismatchError("连接的两个自动机群不一致")
    if separator in first.alphabet or separator in second.alphabet:
        raise InvalidAutomatonError(f"分隔字母 {separator!r} 已在字母表中")
    ctx = first.context
    right = second.replace(
        states=[q + suffix for q in second.states],
        initial=[(q + suffix, w) for q, w in second.initial],
        final=[(q + suffix, w) for q, w in second.final],
        transitions=[
            Transition(t.src + suffix, t.letter, t.weight, t.dst + suffix)
            for t in second.transitions
        ],
    )
    if set(first.states) & set(right.states):
        raise InvalidAutomatonError("连接后状态名冲突，请换一个后缀")
    alphabet = list(first.alphabet)
    alphabet.extend(a for a in second.alphabet if a not in first.alphabet)
    alphabet.append(separator)
    bridges = [
        Transition(q, separator, ctx.op(alpha, beta), p)
        for q, alpha in first.sorted_final()
        for p, beta in right.sorted_initial()
    ]
    return first.replace(
        alphabet=alphabet,
        states=list(first.states) + list(right.states),
        initial=first.initial,
        final=right.final,
        transitions=list(first.transitions) + list(right.transitions) + bridges,
    )


def kleene_separator(automaton: WeightedAutomaton, separator: str) -> WeightedAutomaton:
    """在读到分隔字母时从终止对回到初始对，实现 u1#u2#…#un 的逐段映射"""
    if separator in automaton.alphabet:
        raise InvalidAutomatonError(f"分隔字母 {separator!r} 已在字母表中")
    ctx = automaton.context
    loops = [
        Transition(q, separator, ctx.op(alpha, beta), p)
        for q, alpha in automaton.sorted_final()
        for p, beta in automaton.sorted_initial()
    ]
    return automaton.replace(
        alphabet=list(automaton.alphabet) + [separator],
        transitions=list(automaton.transitions) + loops,
    )


__all__ = [
    "Configuration",
    "concatenate",
    "connected_components",
    "empty_automaton",
    "enumerate_runs",
    "equiv_up_to",
    "evaluate",
    "evaluate_all",
    "find_distinguishing_word",
    "initial_configurations",
    "is_structurally_k_sequential",
    "is_structurally_sequential",
    "kleene_separator",
    "mw_constant",
    "out_max",
    "output_of",
    "rename_states",
    "restrict_initial",
    "sequential_components",
    "step_configurations",
    "trim",
    "union",
    "union_many",
    "valuedness_estimate",
]
