"""
加权自动机数据模型

WeightedAutomaton 是集合语义下的加权自动机 (Q, t_init, t_final, T)：
- 初始/终止关系是 (状态, 权重) 对的有限集合
- 转移是 (源状态, 字母, 权重, 目标状态) 的有限集合

自动机构造后不可变，可在线程间共享。
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Sequence, Tuple

from core.errors import InvalidAutomatonError, UnknownLetterError
from core.group import GroupContext, GroupElement


class Transition(NamedTuple):
    """一条加权转移"""

    src: str
    letter: str
    weight: GroupElement
    dst: str


# (状态, 权重) 对，用于初始和终止关系
WeightedPair = Tuple[str, GroupElement]


@dataclass(frozen=True)
class Run:
    """
    自动机上的一条运行

    transition_indices 指向 WeightedAutomaton.transition_list 中的转移。
    """

    start: str
    input: Tuple[str, ...]
    weight: GroupElement
    end: str
    transition_indices: Tuple[int, ...] = ()


@dataclass(frozen=True, eq=False)
class WeightedAutomaton:
    """集合语义的加权自动机"""

    context: GroupContext
    alphabet: Tuple[str, ...]
    states: Tuple[str, ...]
    initial: FrozenSet[WeightedPair]
    final: FrozenSet[WeightedPair]
    transitions: FrozenSet[Transition]
    # 派生索引，构造时计算
    _state_index: Dict[str, int] = field(init=False, repr=False, compare=False)
    _outgoing: Dict[Tuple[str, str], Tuple[Transition, ...]] = field(
        init=False, repr=False, compare=False
    )
    _sorted_transitions: Tuple[Transition, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise InvalidAutomatonError("状态名重复")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InvalidAutomatonError("字母表有重复字母")
        index = {state: i for i, state in enumerate(self.states)}
        letters = set(self.alphabet)

        def check_state(state: str, where: str) -> None:
            if state not in index:
                raise InvalidAutomatonError(f"{where} 引用了未声明的状态 {state!r}")

        def check_weight(weight: GroupElement, where: str) -> None:
            if weight.context != self.context:
                raise InvalidAutomatonError(f"{where} 的权重不属于群 {self.context.tag()}")

        for state, weight in self.initial:
            check_state(state, "初始关系")
            check_weight(weight, "初始关系")
        for state, weight in self.final:
            check_state(state, "终止关系")
            check_weight(weight, "终止关系")

        outgoing: Dict[Tuple[str, str], List[Transition]] = {}
        for t in self.transitions:
            check_state(t.src, "转移")
            check_state(t.dst, "转移")
            check_weight(t.weight, "转移")
            if t.letter not in letters:
                raise InvalidAutomatonError(f"转移使用了字母表之外的字母 {t.letter!r}")
            outgoing.setdefault((t.src, t.letter), []).append(t)

        object.__setattr__(self, "_state_index", index)
        object.__setattr__(
            self, "_sorted_transitions", tuple(sorted(self.transitions, key=self.transition_key))
        )
        object.__setattr__(
            self,
            "_outgoing",
            {key: tuple(sorted(ts, key=self.transition_key)) for key, ts in outgoing.items()},
        )

    # ------------------------------------------------------------ 构造

    @classmethod
    def build(
        cls,
        context: GroupContext,
        alphabet: Sequence[str],
        states: Sequence[str],
        initial: Iterable[WeightedPair],
        final: Iterable[WeightedPair],
        transitions: Iterable[Tuple[str, str, GroupElement, str]],
    ) -> "WeightedAutomaton":
        """从普通序列构造自动机"""
        return cls(
            context=context,
            alphabet=tuple(alphabet),
            states=tuple(states),
            initial=frozenset(initial),
            final=frozenset(final),
            transitions=frozenset(Transition(*t) for t in transitions),
        )

    def replace(self, **changes) -> "WeightedAutomaton":
        """返回替换部分字段后的新自动机"""
        data = {
            "context": self.context,
            "alphabet": self.alphabet,
            "states": self.states,
            "initial": self.initial,
            "final": self.final,
            "transitions": self.transitions,
        }
        data.update(changes)
        for key in ("initial", "final", "transitions"):
            data[key] = frozenset(data[key])
        data["states"] = tuple(data["states"])
        data["alphabet"] = tuple(data["alphabet"])
        return WeightedAutomaton(**data)

    # ------------------------------------------------------------ 比较

    def _key(self) -> Tuple:
        return (
            self.context,
            self.alphabet,
            self.states,
            self.initial,
            self.final,
            self.transitions,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedAutomaton):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    # ------------------------------------------------------------ 查询

    def state_index(self, state: str) -> int:
        return self._state_index[state]

    def pair_key(self, pair: WeightedPair) -> Tuple:
        """(状态, 权重) 对的规范排序键：先状态序号，再群元素序"""
        return (self._state_index[pair[0]], self.context.sort_key(pair[1]))

    def transition_key(self, t: Transition) -> Tuple:
        return (
            self._state_index[t.src],
            t.letter,
            self.context.sort_key(t.weight),
            self._state_index[t.dst],
        )

    @property
    def transition_list(self) -> Tuple[Transition, ...]:
        """按规范顺序排列的转移"""
        return self._sorted_transitions

    def sorted_initial(self) -> List[WeightedPair]:
        return sorted(self.initial, key=self.pair_key)

    def sorted_final(self) -> List[WeightedPair]:
        return sorted(self.final, key=self.pair_key)

    def outgoing(self, state: str, letter: str) -> Tuple[Transition, ...]:
        """从 state 读 letter 的全部转移"""
        return self._outgoing.get((state, letter), ())

    def final_weights(self, state: str) -> List[GroupElement]:
        return sorted(
            (w for q, w in self.final if q == state), key=self.context.sort_key
        )

    def initial_states(self) -> List[str]:
        return sorted({q for q, _ in self.initial}, key=self._state_index.__getitem__)

    def check_word(self, word: Sequence[str]) -> None:
        letters = set(self.alphabet)
        for letter in word:
            if letter not in letters:
                raise UnknownLetterError(letter)

    def weights(self) -> List[GroupElement]:
        """自动机中出现的全部权重"""
        result = [w for _, w in self.initial]
        result.extend(w for _, w in self.final)
        result.extend(t.weight for t in self.transitions)
        return result

    def is_empty(self) -> bool:
        return not self.initial or not self.final

    def summary(self) -> str:
        return (
            f"{len(self.states)} 个状态, {len(self.transitions)} 条转移, "
            f"{len(self.initial)} 个初始对, {len(self.final)} 个终止对, 群 {self.context.tag()}"
        )


def empty_automaton(context: GroupContext, alphabet: Sequence[str]) -> WeightedAutomaton:
    """空自动机：对每个单词求值都得到空集"""
    return WeightedAutomaton.build(context, alphabet, (), (), (), ())
