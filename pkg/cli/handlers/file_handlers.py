"""
文件处理器 Mixin

本模块包含 CommandLineApp 中与文件读写直接相关的子命令：
eval、export-dot、corpus、oracle-equiv。
"""

import argparse
from typing import Callable, FrozenSet, Iterable, Optional, Tuple, Union

from core.automaton.model import WeightedAutomaton
from core.automaton.operations import evaluate
from core.corpus import builtin_corpus, dump_corpus
from core.cra import CostRegisterAutomaton, cra_eval
from core.errors import AlphabetMismatchError, ContextMismatchError
from core.group import GroupContext, GroupElement
from core.serialization import (
    Document,
    export_dot,
    load_automaton,
    load_cra,
    load_document,
    render_automaton,
    render_cra,
    save_document,
)
from utils.constants import EXIT_FAILS, EXIT_OK
from utils.words import Word, format_word, parse_word, words_up_to


def format_weights(ctx: GroupContext, values: Iterable[GroupElement]) -> str:
    """输出集合的文本形式，按规范顺序排列，空单词写作 ε"""
    items = [ctx.format(v) or "ε" for v in sorted(values)]
    return "{" + ", ".join(items) + "}"


def evaluator(document: Document) -> Callable[[Word], FrozenSet[GroupElement]]:
    if isinstance(document, CostRegisterAutomaton):
        return lambda word: cra_eval(document, word)
    return lambda word: evaluate(document, word)


class FileHandlerMixin:
    """
    文件处理器 Mixin 类

    注意：此类使用 Mixin 模式，self 实际上是 CommandLineApp 实例
    """

    # ------------------------------------------------------------ 读写

    def load_automaton(self, path: str) -> WeightedAutomaton:
        return load_automaton(path)

    def load_cra(self, path: str) -> CostRegisterAutomaton:
        return load_cra(path)

    def write_document(
        self, document: Document, path: Optional[str], labels: Optional[dict] = None
    ) -> None:
        """写入文件；没有给出路径时输出到 stdout"""
        if path:
            save_document(document, path, labels)
            self.emit(f"已写入 {path}")  # type: ignore[attr-defined]
            return
        if isinstance(document, CostRegisterAutomaton):
            self.emit(render_cra(document).rstrip("\n"))  # type: ignore[attr-defined]
        else:
            self.emit(render_automaton(document, labels).rstrip("\n"))  # type: ignore[attr-defined]

    # ------------------------------------------------------------ 子命令

    def cmd_eval(self, args: argparse.Namespace) -> int:
        """eval FILE WORD...：每个单词输出一行权重集合"""
        document = load_document(args.file)
        run = evaluator(document)
        for text in args.words:
            values = run(parse_word(text))
            self.emit(format_weights(document.context, values))  # type: ignore[attr-defined]
        return EXIT_OK

    def cmd_export_dot(self, args: argparse.Namespace) -> int:
        document = load_document(args.file)
        source = export_dot(document, args.output)
        if args.output:
            self.emit(f"已写入 {args.output}")  # type: ignore[attr-defined]
        else:
            self.emit(source.rstrip("\n"))  # type: ignore[attr-defined]
        return EXIT_OK

    def cmd_corpus(self, args: argparse.Namespace) -> int:
        """列出内置语料及其期望结果，--dump 时写入目录"""
        for entry in builtin_corpus():
            expected = ", ".join(
                f"BTP-{k}={status.value}" for k, status in sorted(entry.expected_btp.items())
            )
            degree = "" if entry.expected_degree is None else f" degree={entry.expected_degree}"
            kind = "cra" if entry.is_cra else "automaton"
            line = f"{entry.name}\t{kind}\t{entry.description}{degree}"
            self.emit(f"{line}\t{expected}" if expected else line)  # type: ignore[attr-defined]
        if args.dump:
            for path in dump_corpus(args.dump):
                self.emit(f"已写入 {path}")  # type: ignore[attr-defined]
        return EXIT_OK

    def cmd_oracle_equiv(self, args: argparse.Namespace) -> int:
        """在长度不超过 --len-bound 的全部单词上比较两个文档（加权自动机或 CRA）"""
        first = load_document(args.first)
        second = load_document(args.second)
        if first.context != second.context:
            raise ContextMismatchError(f"群不一致: {first.context.tag()} 与 {second.context.tag()}")
        if set(first.alphabet) != set(second.alphabet):
            raise AlphabetMismatchError("两个文档的字母表不一致")
        length = self.config.len_bound  # type: ignore[attr-defined]
        difference = _first_difference(evaluator(first), evaluator(second), first.alphabet, length)
        if difference is None:
            self.emit(f"equivalent up to length {length}")  # type: ignore[attr-defined]
            return EXIT_OK
        word, left, right = difference
        ctx = first.context
        self.emit(  # type: ignore[attr-defined]
            f"differ on {format_word(word) or 'ε'}: "
            f"{format_weights(ctx, left)} vs {format_weights(ctx, right)}"
        )
        return EXIT_FAILS


def _first_difference(
    first: Callable[[Word], FrozenSet[GroupElement]],
    second: Callable[[Word], FrozenSet[GroupElement]],
    alphabet: Union[Tuple[str, ...], list],
    length: int,
) -> Optional[Tuple[Word, FrozenSet[GroupElement], FrozenSet[GroupElement]]]:
    for word in words_up_to(alphabet, length):
        left, right = first(word), second(word)
        if left != right:
            return word, left, right
    return None
