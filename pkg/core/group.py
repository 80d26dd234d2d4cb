"""
群运算模块

提供带固定生成元集合的无穷有限生成群的抽象，以及两个具体实例：
- IntegerGroup: 整数加法群 (Z, +)，生成元 {1}
- FreeGroup: 有限字母表 B 上的自由群，元素为约化的带符号字母序列

群元素 GroupElement 不可变，所有运算都是纯函数，可在线程间自由共享。
自由群元素在每次运算后立即约化，因此范数和延迟的计算都是线性时间。
"""

from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from core.errors import ElementSyntaxError, MixedContextError

# 自由群中的一个带符号字母: (字母, +1 或 -1)
SignedLetter = Tuple[str, int]


class GroupKind(Enum):
    """群的种类"""

    INTEGERS = "Z"  # 整数加法群
    FREE = "free"  # 自由群


@dataclass(frozen=True)
class GroupElement:
    """
    群元素

    value 的含义由 context 决定：整数群中为 int，
    自由群中为约化后的带符号字母元组。
    """

    context: "GroupContext"
    value: Any

    def __str__(self) -> str:
        return self.context.format(self)

    def __repr__(self) -> str:
        return f"GroupElement({self.context.tag()}, {self.context.format(self)!r})"

    def __lt__(self, other: "GroupElement") -> bool:
        return self.context.sort_key(self) < other.context.sort_key(other)

    @property
    def sort_key(self) -> Tuple:
        """规范全序的排序键"""
        return self.context.sort_key(self)


class GroupContext(ABC):
    """
    群上下文抽象基类

    子类实现载荷层面的运算（_op_values 等），
    基类负责上下文检查和 GroupElement 的封装。
    """

    kind: GroupKind

    # ------------------------------------------------------------ 子类实现

    @property
    @abstractmethod
    def is_commutative(self) -> bool:
        """群是否交换"""

    @abstractmethod
    def tag(self) -> str:
        """文件格式中使用的群标记，例如 "Z" 或 "free:ab" """

    @abstractmethod
    def _identity_value(self) -> Any: ...

    @abstractmethod
    def _op_values(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def _inverse_value(self, a: Any) -> Any: ...

    @abstractmethod
    def _norm_value(self, a: Any) -> int: ...

    @abstractmethod
    def _generator_values(self) -> List[Any]: ...

    @abstractmethod
    def _parse_value(self, text: str) -> Any: ...

    @abstractmethod
    def _format_value(self, a: Any) -> str: ...

    @abstractmethod
    def _sort_key_value(self, a: Any) -> Tuple: ...

    @abstractmethod
    def _is_positive_value(self, a: Any) -> bool: ...

    # ------------------------------------------------------------ 公共接口

    def _check(self, *elements: GroupElement) -> None:
        for element in elements:
            if element.context is not self and element.context != self:
                raise MixedContextError(
                    f"元素属于群 {element.context.tag()}，当前群为 {self.tag()}"
                )

    def element(self, value: Any) -> GroupElement:
        """用原始载荷构造元素（不做约化，调用方保证合法）"""
        return GroupElement(self, value)

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity_value())

    @property
    def generators(self) -> List[GroupElement]:
        return [GroupElement(self, v) for v in self._generator_values()]

    def op(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a, b)
        return GroupElement(self, self._op_values(a.value, b.value))

    def product(self, elements: Iterable[GroupElement]) -> GroupElement:
        """按顺序连乘，空序列返回单位元"""
        value = self._identity_value()
        for element in elements:
            self._check(element)
            value = self._op_values(value, element.value)
        return GroupElement(self, value)

    def inverse(self, a: GroupElement) -> GroupElement:
        self._check(a)
        return GroupElement(self, self._inverse_value(a.value))

    def delay(self, a: GroupElement, b: GroupElement) -> GroupElement:
        """延迟 a⁻¹·b"""
        self._check(a, b)
        return GroupElement(self, self._op_values(self._inverse_value(a.value), b.value))

    def norm(self, a: GroupElement) -> int:
        self._check(a)
        return self._norm_value(a.value)

    def power(self, a: GroupElement, n: int) -> GroupElement:
        """a 的 n 次幂 (n ≥ 0)"""
        if n < 0:
            raise ValueError("幂次必须非负")
        self._check(a)
        result = self._identity_value()
        base = a.value
        # 快速幂
        while n:
            if n & 1:
                result = self._op_values(result, base)
            base = self._op_values(base, base)
            n >>= 1
        return GroupElement(self, result)

    def is_identity(self, a: GroupElement) -> bool:
        return a.value == self._identity_value()

    def is_positive(self, a: GroupElement) -> bool:
        self._check(a)
        return self._is_positive_value(a.value)

    def parse(self, text: str) -> GroupElement:
        return GroupElement(self, self._parse_value(text))

    def format(self, a: GroupElement) -> str:
        return self._format_value(a.value)

    def sort_key(self, a: GroupElement) -> Tuple:
        return self._sort_key_value(a.value)


@dataclass(frozen=True)
class IntegerGroup(GroupContext):
    """整数加法群 (Z, +)"""

    kind = GroupKind.INTEGERS

    @property
    def is_commutative(self) -> bool:
        return True

    def tag(self) -> str:
        return GroupKind.INTEGERS.value

    def _identity_value(self) -> int:
        return 0

    def _op_values(self, a: int, b: int) -> int:
        return a + b

    def _inverse_value(self, a: int) -> int:
        return -a

    def _norm_value(self, a: int) -> int:
        return abs(a)

    def _generator_values(self) -> List[int]:
        return [1]

    def _parse_value(self, text: str) -> int:
        text = text.strip()
        if not text:
            return 0
        try:
            return int(text)
        except ValueError:
            raise ElementSyntaxError(f"不是合法的整数: {text!r}") from None

    def _format_value(self, a: int) -> str:
        return str(a)

    def _sort_key_value(self, a: int) -> Tuple:
        return (a,)

    def _is_positive_value(self, a: int) -> bool:
        return a >= 0


@dataclass(frozen=True)
class FreeGroup(GroupContext):
    """
    字母表 B 上的自由群

    元素文本语法：空格分隔的字母，逆字母带 ' 后缀，例如 "a b' a"。
    空串表示单位元。
    """

    alphabet: Tuple[str, ...]

    kind = GroupKind.FREE

    def __post_init__(self):
        if not self.alphabet:
            raise ElementSyntaxError("自由群的字母表不能为空")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ElementSyntaxError("自由群的字母表有重复字母")
        object.__setattr__(self, "_letter_index", {x: i for i, x in enumerate(self.alphabet)})

    @property
    def is_commutative(self) -> bool:
        return False

    def tag(self) -> str:
        if all(len(letter) == 1 for letter in self.alphabet):
            return "free:" + "".join(self.alphabet)
        return "free:" + ",".join(self.alphabet)

    def word(self, letters: Sequence[str]) -> GroupElement:
        """由普通单词（无逆字母）构造元素"""
        for letter in letters:
            if letter not in self.alphabet:
                raise ElementSyntaxError(f"字母 {letter!r} 不在自由群字母表中")
        return GroupElement(self, tuple((letter, 1) for letter in letters))

    def _identity_value(self) -> Tuple[SignedLetter, ...]:
        return ()

    def _op_values(
        self, a: Tuple[SignedLetter, ...], b: Tuple[SignedLetter, ...]
    ) -> Tuple[SignedLetter, ...]:
        # a 和 b 均已约化，只需在连接处消去
        i = len(a)
        j = 0
        while i > 0 and j < len(b) and a[i - 1][0] == b[j][0] and a[i - 1][1] == -b[j][1]:
            i -= 1
            j += 1
        return a[:i] + b[j:]

    def _inverse_value(self, a: Tuple[SignedLetter, ...]) -> Tuple[SignedLetter, ...]:
        return tuple((letter, -sign) for letter, sign in reversed(a))

    def _norm_value(self, a: Tuple[SignedLetter, ...]) -> int:
        return len(a)

    def _generator_values(self) -> List[Tuple[SignedLetter, ...]]:
        return [((letter, 1),) for letter in self.alphabet]

    def _parse_value(self, text: str) -> Tuple[SignedLetter, ...]:
        value: Tuple[SignedLetter, ...] = ()
        for token in text.split():
            sign = 1
            if token.endswith("'"):
                token, sign = token[:-1], -1
            elif token.endswith("⁻¹"):
                token, sign = token[:-2], -1
            if token not in self.alphabet:
                raise ElementSyntaxError(f"字母 {token!r} 不在自由群字母表中")
            value = self._op_values(value, ((token, sign),))
        return value

    def _format_value(self, a: Tuple[SignedLetter, ...]) -> str:
        return " ".join(letter + ("'" if sign < 0 else "") for letter, sign in a)

    def _sort_key_value(self, a: Tuple[SignedLetter, ...]) -> Tuple:
        # 先比较长度，再按字典序；所有正字母排在逆字母之前
        index = self._letter_index  # type: ignore[attr-defined]
        return (len(a), tuple((0 if sign > 0 else 1, index[letter]) for letter, sign in a))

    def _is_positive_value(self, a: Tuple[SignedLetter, ...]) -> bool:
        return all(sign > 0 for _, sign in a)

    def letters(self, a: GroupElement) -> List[SignedLetter]:
        """元素的约化带符号字母列表"""
        self._check(a)
        return list(a.value)


def context_from_tag(tag: str) -> GroupContext:
    """
    根据群标记构造群上下文

    Args:
        tag: "Z"、"free:ab" 或 "free:x,y,z"

    Returns:
        对应的群上下文
    """
    tag = tag.strip()
    if tag == GroupKind.INTEGERS.value:
        return IntegerGroup()
    if tag.startswith("free:"):
        spec = tag[len("free:"):]
        letters = spec.split(",") if "," in spec else list(spec)
        letters = [letter.strip() for letter in letters if letter.strip()]
        return FreeGroup(tuple(letters))
    raise ElementSyntaxError(f"未知的群标记: {tag!r}")


# ============================================================================
# 模块级运算（以上下文为第一个参数）
# ============================================================================


def identity(ctx: GroupContext) -> GroupElement:
    return ctx.identity


def op(ctx: GroupContext, a: GroupElement, b: GroupElement) -> GroupElement:
    return ctx.op(a, b)


def inverse(ctx: GroupContext, a: GroupElement) -> GroupElement:
    return ctx.inverse(a)


def delay(ctx: GroupContext, a: GroupElement, b: GroupElement) -> GroupElement:
    return ctx.delay(a, b)


def norm(ctx: GroupContext, a: GroupElement) -> int:
    return ctx.norm(a)


def power(ctx: GroupContext, a: GroupElement, n: int) -> GroupElement:
    return ctx.power(a, n)


def is_positive(ctx: GroupContext, a: GroupElement) -> bool:
    return ctx.is_positive(a)


def parse_element(ctx: GroupContext, text: Any) -> GroupElement:
    """解析元素文本；整数群也接受 int 值"""
    if isinstance(text, bool):
        raise ElementSyntaxError(f"不是合法的群元素: {text!r}")
    if isinstance(text, int):
        if ctx.kind is not GroupKind.INTEGERS:
            raise ElementSyntaxError(f"自由群元素必须是字符串: {text!r}")
        return ctx.element(text)
    if not isinstance(text, str):
        raise ElementSyntaxError(f"不是合法的群元素: {text!r}")
    return ctx.parse(text)


def format_element(ctx: GroupContext, a: GroupElement) -> str:
    return ctx.format(a)


def word_dist(u: Sequence[str], v: Sequence[str]) -> int:
    """
    单词之间的前缀距离 |u| + |v| - 2·|lcp(u, v)|

    Args:
        u: 第一个单词（字母序列）
        v: 第二个单词

    Returns:
        前缀距离
    """
    lcp = 0
    for x, y in zip(u, v):
        if x != y:
            break
        lcp += 1
    return len(u) + len(v) - 2 * lcp


def cayley_distance(
    ctx: GroupContext, a: GroupElement, b: GroupElement, radius: int
) -> Optional[int]:
    """
    在无向右 Cayley 图中用广度优先搜索计算距离

    只在小范数下使用；超过 radius 仍未到达时返回 None。
    """
    ctx.op(a, b)  # 上下文检查
    if a == b:
        return 0
    steps: List[GroupElement] = []
    for g in ctx.generators:
        steps.append(g)
        steps.append(ctx.inverse(g))
    seen = {a}
    queue = deque([(a, 0)])
    while queue:
        current, dist = queue.popleft()
        if dist >= radius:
            continue
        for step in steps:
            nxt = ctx.op(current, step)
            if nxt in seen:
                continue
            if nxt == b:
                return dist + 1
            seen.add(nxt)
            queue.append((nxt, dist + 1))
    return None
