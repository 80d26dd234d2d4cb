"""
代价寄存器自动机模块

CostRegisterAutomaton 是确定的寄存器自动机 (Q, q_init, 𝒳, δ, μ)：
- δ(q, a) = (p, h)，h 把每个寄存器 Y 映射为 (X, α)，表示 Y := X·α
- μ 是 (状态, 寄存器, 权重) 三元组的集合，输出 ν(X)·α
- 每个更新都形如 X := X·α 时称寄存器独立

功能：
- cra_eval: 求值（运行卡住时输出空集）
- kseq_to_cra / cra_to_kseq: k 个顺序自动机与 k 个独立寄存器之间的转换
- compute_alive: 活寄存器集合（最小不动点）
- positivize: 把自由群上计算单词关系的 CRA 转换为只用正单词的 CRA
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from core.analysis_config import AnalysisConfig
from core.automaton.model import Transition, WeightedAutomaton
from core.automaton.operations import evaluate, is_structurally_sequential, trim, union_many
from core.base import BaseAnalyzer
from core.errors import (
    AlphabetMismatchError,
    ContextMismatchError,
    InvalidAutomatonError,
    NotIndependentError,
    NotSequentialInputError,
    NotWordRelationError,
    StateCapExceededError,
    UnknownLetterError,
    UnsupportedGroupError,
)
from core.group import FreeGroup, GroupContext, GroupElement
from utils.words import Word, format_word, words_up_to

# Y -> (X, α)，表示 Y := X·α
Update = Mapping[str, Tuple[str, GroupElement]]
# (状态, 寄存器, 权重)
OutputEntry = Tuple[str, str, GroupElement]

INIT_STATE = "init"


@dataclass(frozen=True, eq=False)
class CostRegisterAutomaton:
    """确定的代价寄存器自动机"""

    context: GroupContext
    alphabet: Tuple[str, ...]
    states: Tuple[str, ...]
    initial: str
    registers: Tuple[str, ...]
    transitions: Mapping[Tuple[str, str], Tuple[str, Update]]
    output: FrozenSet[OutputEntry]

    def __post_init__(self):
        states = set(self.states)
        registers = set(self.registers)
        letters = set(self.alphabet)
        if len(states) != len(self.states):
            raise InvalidAutomatonError("状态名重复")
        if len(registers) != len(self.registers):
            raise InvalidAutomatonError("寄存器名重复")
        if self.initial not in states:
            raise InvalidAutomatonError(f"初始状态 {self.initial!r} 未声明")
        for (src, letter), (dst, update) in self.transitions.items():
            if src not in states or dst not in states:
                raise InvalidAutomatonError(f"转移 ({src}, {letter}) 引用了未声明的状态")
            if letter not in letters:
                raise InvalidAutomatonError(f"转移使用了字母表之外的字母 {letter!r}")
            if set(update) != registers:
                raise InvalidAutomatonError(f"转移 ({src}, {letter}) 的更新没有覆盖全部寄存器")
            for source, weight in update.values():
                if source not in registers:
                    raise InvalidAutomatonError(f"更新读取了未声明的寄存器 {source!r}")
                if weight.context != self.context:
                    raise InvalidAutomatonError("更新的权重不属于自动机的群")
        for state, register, weight in self.output:
            if state not in states or register not in registers:
                raise InvalidAutomatonError(f"输出 ({state}, {register}) 引用了未声明的名字")
            if weight.context != self.context:
                raise InvalidAutomatonError("输出的权重不属于自动机的群")

    @classmethod
    def build(
        cls,
        context: GroupContext,
        alphabet: Sequence[str],
        states: Sequence[str],
        initial: str,
        registers: Sequence[str],
        transitions: Iterable[Tuple[str, str, str, Mapping[str, Tuple[str, GroupElement]]]],
        output: Iterable[OutputEntry],
    ) -> "CostRegisterAutomaton":
        """
        从普通序列构造；更新中省略的寄存器视为 Y := Y·1

        Raises:
            InvalidAutomatonError: 同一 (状态, 字母) 有多个转移
        """
        table: Dict[Tuple[str, str], Tuple[str, Dict[str, Tuple[str, GroupElement]]]] = {}
        for src, letter, dst, update in transitions:
            if (src, letter) in table:
                raise InvalidAutomatonError(f"({src}, {letter}) 上有多个转移，不是确定的")
            full = {y: (y, context.identity) for y in registers}
            full.update(update)
            table[(src, letter)] = (dst, full)
        return cls(
            context,
            tuple(alphabet),
            tuple(states),
            initial,
            tuple(registers),
            table,
            frozenset(output),
        )

    @property
    def independent(self) -> bool:
        """每个更新都形如 Y := Y·α"""
        return all(
            source == target
            for _, update in self.transitions.values()
            for target, (source, _) in update.items()
        )

    def step(self, state: str, letter: str) -> Optional[Tuple[str, Update]]:
        return self.transitions.get((state, letter))

    def sorted_transitions(self) -> List[Tuple[str, str, str, Update]]:
        index = {q: i for i, q in enumerate(self.states)}
        letters = {a: i for i, a in enumerate(self.alphabet)}
        return [
            (src, letter, dst, update)
            for (src, letter), (dst, update) in sorted(
                self.transitions.items(), key=lambda item: (index[item[0][0]], letters[item[0][1]])
            )
        ]

    def sorted_output(self) -> List[OutputEntry]:
        index = {q: i for i, q in enumerate(self.states)}
        registers = {x: i for i, x in enumerate(self.registers)}
        return sorted(
            self.output,
            key=lambda e: (index[e[0]], registers[e[1]], self.context.sort_key(e[2])),
        )

    def update_weights(self) -> List[GroupElement]:
        return [w for _, update in self.transitions.values() for _, w in update.values()]

    def summary(self) -> str:
        kind = "独立" if self.independent else "非独立"
        return (
            f"{len(self.states)} 个状态, {len(self.registers)} 个{kind}寄存器, "
            f"{len(self.transitions)} 条转移, {len(self.output)} 个输出项, 群 {self.context.tag()}"
        )


def cra_eval(cra: CostRegisterAutomaton, word: Sequence[str]) -> FrozenSet[GroupElement]:
    """
    在单词上运行 CRA

    Returns:
        {ν(X)·α | (q_end, X, α) ∈ μ}；δ 未定义时返回空集
    """
    ctx = cra.context
    letters = set(cra.alphabet)
    state = cra.initial
    valuation = {x: ctx.identity for x in cra.registers}
    for letter in word:
        if letter not in letters:
            raise UnknownLetterError(letter)
        move = cra.step(state, letter)
        if move is None:
            return frozenset()
        state, update = move
        valuation = {y: ctx.op(valuation[x], alpha) for y, (x, alpha) in update.items()}
    return frozenset(
        ctx.op(valuation[register], alpha)
        for q, register, alpha in cra.output
        if q == state
    )


# ---------------------------------------------------------------- 转换


def _product_name(components: Sequence[Optional[str]]) -> str:
    return "(" + ",".join("_" if q is None else q for q in components) + ")"


def kseq_to_cra(machines: Sequence[WeightedAutomaton]) -> CostRegisterAutomaton:
    """
    k 个顺序自动机的乘积，寄存器 X_i 记录第 i 个机器的运行权重

    初始状态 init 只在读第一个字母时把初始权重 γ_i 并入寄存器；
    某个分量的运行中断后该分量记为 _，对应寄存器保持不变；空机器从一开始就是 _。

    Raises:
        NotSequentialInputError: 有机器不是结构顺序的
        AlphabetMismatchError / ContextMismatchError: 字母表或群不一致
    """
    if not machines:
        raise NotSequentialInputError("至少需要一个顺序自动机")
    head = machines[0]
    for i, machine in enumerate(machines, start=1):
        if machine.context != head.context:
            raise ContextMismatchError(f"第 {i} 个机器的群与第 1 个不一致")
        if set(machine.alphabet) != set(head.alphabet):
            raise AlphabetMismatchError(f"第 {i} 个机器的字母表与第 1 个不一致")
        if machine.initial and not is_structurally_sequential(machine):
            raise NotSequentialInputError(f"第 {i} 个机器不是结构顺序的")
    ctx = head.context
    registers = [f"X{i}" for i in range(1, len(machines) + 1)]
    starts = [next(iter(m.initial)) if m.initial else None for m in machines]

    states: List[str] = [INIT_STATE]
    transitions = []
    output: List[OutputEntry] = []
    for i, pair in enumerate(starts):
        if pair is None:
            continue
        start, gamma = pair
        for phi in machines[i].final_weights(start):
            output.append((INIT_STATE, registers[i], ctx.op(gamma, phi)))

    Vector = Tuple[Optional[str], ...]
    seen: Dict[Vector, str] = {}
    queue: deque = deque()

    def visit(vector: Vector) -> str:
        name = seen.get(vector)
        if name is None:
            name = _product_name(vector)
            seen[vector] = name
            states.append(name)
            queue.append(vector)
            for i, q in enumerate(vector):
                if q is not None:
                    for phi in machines[i].final_weights(q):
                        output.append((name, registers[i], phi))
        return name

    def successor(
        vector: Vector, letter: str, entry: bool
    ) -> Optional[Tuple[Vector, Dict[str, Tuple[str, GroupElement]]]]:
        target: List[Optional[str]] = []
        update = {}
        for i, q in enumerate(vector):
            moves = machines[i].outgoing(q, letter) if q is not None else ()
            if moves:
                t = moves[0]
                weight = t.weight
                pair = starts[i]
                if entry and pair is not None:
                    weight = ctx.op(pair[1], weight)
                target.append(t.dst)
                update[registers[i]] = (registers[i], weight)
            else:
                target.append(None)
                update[registers[i]] = (registers[i], ctx.identity)
        if all(q is None for q in target):
            return None
        return tuple(target), update

    initial_vector: Vector = tuple(pair[0] if pair else None for pair in starts)
    for letter in head.alphabet:
        move = successor(initial_vector, letter, True)
        if move is not None:
            transitions.append((INIT_STATE, letter, visit(move[0]), move[1]))
    while queue:
        vector = queue.popleft()
        for letter in head.alphabet:
            move = successor(vector, letter, False)
            if move is not None:
                transitions.append((seen[vector], letter, visit(move[0]), move[1]))
    return CostRegisterAutomaton.build(
        ctx, head.alphabet, states, INIT_STATE, registers, transitions, output
    )


def cra_to_kseq(cra: CostRegisterAutomaton) -> List[WeightedAutomaton]:
    """
    独立 CRA 在每个寄存器上的投影（修剪后），顺序与寄存器顺序一致；
    从不输出的寄存器得到空自动机

    Raises:
        NotIndependentError: 寄存器不独立
    """
    if not cra.independent:
        raise NotIndependentError("寄存器不独立，无法按寄存器投影")
    ctx = cra.context
    machines = []
    for register in cra.registers:
        transitions = [
            Transition(src, letter, update[register][1], dst)
            for src, letter, dst, update in cra.sorted_transitions()
        ]
        final = [(q, alpha) for q, x, alpha in cra.output if x == register]
        machine = WeightedAutomaton.build(
            ctx,
            cra.alphabet,
            cra.states,
            [(cra.initial, ctx.identity)],
            final,
            transitions,
        )
        machines.append(trim(machine))
    return machines


def cra_to_automaton_union(cra: CostRegisterAutomaton) -> WeightedAutomaton:
    """投影的并：与 CRA 等价的加权自动机"""
    return union_many(cra_to_kseq(cra))


def compute_alive(cra: CostRegisterAutomaton) -> FrozenSet[Tuple[str, str]]:
    """
    活寄存器集合 E：最小的满足以下规则的 Q × 𝒳 子集
    - μ 中有 (q, X, ·) 则 (q, X) ∈ E
    - δ(q, a) = (p, h)，h(Y) = (X, ·)，(p, Y) ∈ E 则 (q, X) ∈ E
    """
    alive: Set[Tuple[str, str]] = {(q, x) for q, x, _ in cra.output}
    readers: Dict[Tuple[str, str], List[Tuple[str, str]]] = {}
    for (src, _), (dst, update) in cra.transitions.items():
        for target, (source, _) in update.items():
            readers.setdefault((dst, target), []).append((src, source))
    queue = deque(alive)
    while queue:
        item = queue.popleft()
        for pred in readers.get(item, ()):
            if pred not in alive:
                alive.add(pred)
                queue.append(pred)
    return frozenset(alive)


def compute_clean(cra: CostRegisterAutomaton) -> FrozenSet[Tuple[str, str]]:
    """
    此后只会追加正单词的 (状态, 寄存器) 集合（最大不动点）：
    所有从该寄存器出发的更新值和输出值都是正单词
    """
    ctx = cra.context
    clean = {(q, x) for q in cra.states for x in cra.registers}
    for q, x, alpha in cra.output:
        if not ctx.is_positive(alpha):
            clean.discard((q, x))
    successors: Dict[Tuple[str, str], List[Tuple[Tuple[str, str], GroupElement]]] = {}
    for (src, _), (dst, update) in cra.transitions.items():
        for target, (source, alpha) in update.items():
            successors.setdefault((src, source), []).append(((dst, target), alpha))
    changed = True
    while changed:
        changed = False
        for item in list(clean):
            for nxt, alpha in successors.get(item, ()):
                if not ctx.is_positive(alpha) or nxt not in clean:
                    clean.discard(item)
                    changed = True
                    break
    return frozenset(clean)


# ---------------------------------------------------------------- 正化


def positivize_bound(cra: CostRegisterAutomaton) -> Tuple[int, int, int]:
    """
    残差长度上限 N = |Q|·m + s

    Returns:
        (N, m, s)：m 为更新值的最大长度，s 为输出值的最大长度
    """
    ctx = cra.context
    m = max((ctx.norm(w) for w in cra.update_weights()), default=0)
    s = max((ctx.norm(alpha) for _, _, alpha in cra.output), default=0)
    return len(cra.states) * m + s, m, s


def _scan_word_relation(cra: CostRegisterAutomaton, length: int) -> None:
    ctx = cra.context
    for word in words_up_to(cra.alphabet, length):
        for value in cra_eval(cra, word):
            if not ctx.is_positive(value):
                raise NotWordRelationError(
                    f"单词 {format_word(word) or 'ε'!r} 的输出 {ctx.format(value)!r} 不是正单词",
                    {"word": format_word(word), "value": ctx.format(value)},
                )


Residual = Tuple[GroupElement, ...]


class Positivizer(BaseAnalyzer):
    """自由群 CRA 的正化"""

    def positivize(self, cra: CostRegisterAutomaton) -> CostRegisterAutomaton:
        """
        构造只使用正单词的等价 CRA

        状态为 (q, r)，r 为各寄存器的残差（长度不超过 N）。更新值 r(X)·α 拆成
        最短的正前缀 α₁ 与长度不超过 N 的残差 α₂，α₁ 写入更新。此后只会追加
        正单词的寄存器直接提交全部值。不活的寄存器更新为 X·1。

        Raises:
            UnsupportedGroupError: 群不是自由群
            NotWordRelationError: 扫描或构造中发现输出不是正单词
            StateCapExceededError: (q, r) 状态数超过上限
        """
        ctx = cra.context
        if not isinstance(ctx, FreeGroup):
            raise UnsupportedGroupError(f"正化只适用于自由群，当前为 {ctx.tag()}")
        _scan_word_relation(cra, self.config.positivize_scan)
        bound, m, s = positivize_bound(cra)
        alive = compute_alive(cra)
        clean = compute_clean(cra)
        self.log(f"正化: N = {bound} (m = {m}, s = {s}), 活寄存器 {len(alive)} 个")
        state_cap = self.config.exploration.state_cap
        registers = cra.registers
        position = {x: i for i, x in enumerate(registers)}

        def name_of(state: str, residual: Residual) -> str:
            if all(ctx.is_identity(r) for r in residual):
                return state
            parts = ";".join(
                f"{x}={ctx.format(r)}"
                for x, r in zip(registers, residual)
                if not ctx.is_identity(r)
            )
            return f"{state}[{parts}]"

        start = (cra.initial, tuple(ctx.identity for _ in registers))
        names = {start: name_of(*start)}
        queue = deque([start])
        transitions = []
        output: List[OutputEntry] = []
        while queue:
            state, residual = queue.popleft()
            source_name = names[(state, residual)]
            for q, register, alpha in cra.output:
                if q != state:
                    continue
                value = ctx.op(residual[position[register]], alpha)
                if not ctx.is_positive(value):
                    raise NotWordRelationError(
                        f"状态 {source_name} 上寄存器 {register} 的输出 {ctx.format(value)!r} "
                        "不是正单词",
                        {"state": source_name, "register": register, "value": ctx.format(value)},
                    )
                output.append((source_name, register, value))
            for letter in cra.alphabet:
                move = cra.step(state, letter)
                if move is None:
                    continue
                target, update = move
                new_update: Dict[str, Tuple[str, GroupElement]] = {}
                new_residual: List[GroupElement] = []
                for y in registers:
                    x, alpha = update[y]
                    if (target, y) not in alive:
                        new_update[y] = (x, ctx.identity)
                        new_residual.append(ctx.identity)
                        continue
                    value = ctx.op(residual[position[x]], alpha)
                    if (target, y) in clean and ctx.is_positive(value):
                        committed, rest = value, ctx.identity
                    else:
                        committed, rest = self._split(ctx, value, bound)
                    if not ctx.is_positive(committed):
                        raise NotWordRelationError(
                            f"状态 {source_name} 读 {letter!r} 时寄存器 {y} 的值 "
                            f"{ctx.format(value)!r} 不在 B*(B ∪ B⁻¹)^≤{bound} 中",
                            {
                                "state": source_name,
                                "letter": letter,
                                "register": y,
                                "value": ctx.format(value),
                            },
                        )
                    new_update[y] = (x, committed)
                    new_residual.append(rest)
                key = (target, tuple(new_residual))
                if key not in names:
                    if len(names) >= state_cap:
                        raise StateCapExceededError(f"正化状态数超过上限 {state_cap}")
                    names[key] = name_of(*key)
                    queue.append(key)
                transitions.append((source_name, letter, names[key], new_update))

        result = CostRegisterAutomaton.build(
            ctx,
            cra.alphabet,
            list(names.values()),
            names[start],
            registers,
            transitions,
            output,
        )
        self.log(f"正化完成: {result.summary()}")
        return result

    @staticmethod
    def _split(
        ctx: GroupContext, value: GroupElement, bound: int
    ) -> Tuple[GroupElement, GroupElement]:
        """value = α₁·α₂，α₁ 取长度为 max(0, |value| - N) 的前缀"""
        letters = ctx.letters(value)  # type: ignore[attr-defined]
        cut = max(0, len(letters) - bound)
        return ctx.element(tuple(letters[:cut])), ctx.element(tuple(letters[cut:]))


def positivize(
    cra: CostRegisterAutomaton, config: Optional[AnalysisConfig] = None
) -> CostRegisterAutomaton:
    """把自由群上计算单词关系的 CRA 转换为只用正单词的 CRA"""
    return Positivizer(config).positivize(cra)


def cra_outputs(
    cra: CostRegisterAutomaton, length: int
) -> List[Tuple[Word, FrozenSet[GroupElement]]]:
    """长度不超过 length 的全部单词上的输出"""
    return [(word, cra_eval(cra, word)) for word in words_up_to(cra.alphabet, length)]


def cra_equiv_automaton(
    cra: CostRegisterAutomaton, automaton: WeightedAutomaton, length: int
) -> bool:
    """穷举校验 CRA 与加权自动机在长度不超过 length 的单词上输出相同"""
    return all(
        outputs == evaluate(automaton, word) for word, outputs in cra_outputs(cra, length)
    )
