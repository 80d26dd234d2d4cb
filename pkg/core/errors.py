"""
异常定义模块

本模块集中定义工具包中所有算法模块抛出的异常类型。
所有异常都继承自 AutomatonError，命令行前端据此映射退出码。

异常分组：
- 群运算: MixedContextError, ElementSyntaxError
- 自动机: InvalidAutomatonError, UnknownLetterError, AlphabetMismatchError,
  ContextMismatchError, SizeBoundExceededError, TooShortError
- 子集构造: EmptyAutomatonError, DeadEndError, StateCapExceededError,
  NotTwinnedError, ExplorationInconclusiveError
- 孪生性质: UnsupportedGroupError, NotPositiveError
- 分解: NoLargeDelayError, SplitNotFoundError, BtpViolatedError, BudgetExceededError
- 寄存器自动机: NotSequentialInputError, NotIndependentError, NotWordRelationError
- Lipschitz: InvalidCounterexampleError, PumpLimitExceededError
- 文件格式: ParseError
"""

from typing import Any, Dict, Optional


class AutomatonError(Exception):
    """工具包异常基类"""


# ---------------------------------------------------------------- 群运算


class MixedContextError(AutomatonError):
    """参与运算的群元素属于不同的群上下文"""


class ElementSyntaxError(AutomatonError):
    """群元素文本语法错误"""


# ---------------------------------------------------------------- 自动机


class InvalidAutomatonError(AutomatonError):
    """自动机结构不合法（引用了未声明的状态或字母等）"""


class UnknownLetterError(AutomatonError):
    """输入单词包含字母表之外的字母"""

    def __init__(self, letter: str):
        super().__init__(f"未知字母: {letter!r}")
        self.letter = letter


class AlphabetMismatchError(AutomatonError):
    """两个自动机的字母表不一致"""


class ContextMismatchError(AutomatonError):
    """两个自动机的群上下文不一致"""


class SizeBoundExceededError(AutomatonError):
    """幂自动机的状态数超过配置上限"""


class TooShortError(AutomatonError):
    """运行长度不足以按鸽巢原理切出循环"""


# ---------------------------------------------------------------- 子集构造


class EmptyAutomatonError(AutomatonError):
    """自动机没有初始状态"""


class DeadEndError(AutomatonError):
    """当前子集状态无法读取该字母"""

    def __init__(self, letter: str):
        super().__init__(f"子集状态无法读取字母 {letter!r}")
        self.letter = letter


class StateCapExceededError(AutomatonError):
    """子集构造探索的状态数超过上限"""


class NotTwinnedError(AutomatonError):
    """延迟超过理论阈值 N_W，说明 BTP-1 不成立"""


class ExplorationInconclusiveError(AutomatonError):
    """延迟只超过了实用上限（未超过理论阈值），无法下结论"""


# ---------------------------------------------------------------- 孪生性质


class UnsupportedGroupError(AutomatonError):
    """该群上下文不支持所请求的判定过程"""


class NotPositiveError(AutomatonError):
    """自由群权重中出现逆字母，不是普通单词"""


# ---------------------------------------------------------------- 分解


class NoLargeDelayError(AutomatonError):
    """子集状态中不存在超过阈值的延迟"""


class SplitNotFoundError(AutomatonError):
    """在见证运行上找不到改变延迟的循环"""


class BtpViolatedError(AutomatonError):
    """自动机不满足 BTP-k，无法分解为 k 个顺序自动机"""

    def __init__(self, message: str, counterexample: Optional[Any] = None):
        super().__init__(message)
        self.counterexample = counterexample


class BudgetExceededError(AutomatonError):
    """阈值升级次数用尽，分解仍未通过等价校验"""


class PumpLimitExceededError(AutomatonError):
    """泵次数的倍增搜索超过 lip_pump_limit 或被取消，反例本身有效"""


# ---------------------------------------------------------------- 寄存器自动机


class NotSequentialInputError(AutomatonError):
    """输入的自动机不是结构上顺序的"""


class NotIndependentError(AutomatonError):
    """寄存器更新不是独立形式 X := X·α"""


class NotWordRelationError(AutomatonError):
    """寄存器自动机的语义不是 B* 上的单词关系"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics: Dict[str, Any] = diagnostics or {}


# ---------------------------------------------------------------- Lipschitz


class InvalidCounterexampleError(AutomatonError):
    """反例未通过重放校验"""


# ---------------------------------------------------------------- 文件格式


class ParseError(AutomatonError):
    """自动机文件解析错误，附带行号和列号"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        location = f"第 {line} 行第 {column} 列: " if line else ""
        super().__init__(f"{location}{message}")
        self.line = line
        self.column = column
