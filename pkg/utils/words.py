"""
输入单词工具

输入单词统一表示为字母元组。字母可以是多字符符号（例如 "#"）。
"""

from itertools import product
from typing import Iterator, Sequence, Tuple

Word = Tuple[str, ...]


def parse_word(text: str) -> Word:
    """
    解析命令行给出的单词

    含空白时按空白切分；否则逐字符切分。"ε" 和空串表示空单词。
    字母是否属于字母表由自动机在求值时检查。

    Args:
        text: 单词文本

    Returns:
        字母元组
    """
    text = text.strip()
    if text in ("", "ε", "eps"):
        return ()
    if any(ch.isspace() for ch in text):
        return tuple(text.split())
    return tuple(text)


def format_word(word: Sequence[str]) -> str:
    """单字符字母直接拼接，多字符字母用空格分隔"""
    if all(len(letter) == 1 for letter in word):
        return "".join(word)
    return " ".join(word)


def words_up_to(alphabet: Sequence[str], max_length: int) -> Iterator[Word]:
    """按长度、再按字母表顺序的字典序枚举所有长度不超过 max_length 的单词"""
    for length in range(max_length + 1):
        for letters in product(alphabet, repeat=length):
            yield tuple(letters)
