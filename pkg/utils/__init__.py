"""
工具模块

- constants: 共享常量（退出码、环境变量、默认预算）
- words: 输入单词的解析、格式化和枚举
"""

from utils.constants import (
    BUDGET_ENV_VAR,
    EXIT_FAILS,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
)
from utils.words import Word, format_word, parse_word, words_up_to

__all__ = [
    # 常量
    "BUDGET_ENV_VAR",
    "EXIT_OK",
    "EXIT_FAILS",
    "EXIT_USAGE",
    "EXIT_INCONCLUSIVE",
    # 单词
    "Word",
    "parse_word",
    "format_word",
    "words_up_to",
]
