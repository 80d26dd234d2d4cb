"""
命令行应用

CommandLineApp 由各处理器 Mixin 组装而成：
- FileHandlerMixin: 文件读写、求值、DOT 导出、语料、穷举等价校验
- AnalysisHandlerMixin: BTP 判定、顺序度、子集构造、分解、Lipschitz 见证
- ConversionHandlerMixin: 顺序自动机与 CRA 的互相转换、正化

退出码：0 成功/成立，1 不成立（已输出见证），2 用法或解析错误，3 预算不足无法下结论。
"""

import argparse
import sys
import traceback
from typing import List, Optional, Sequence

from cli.handlers import AnalysisHandlerMixin, ConversionHandlerMixin, FileHandlerMixin
from core.analysis_config import AnalysisConfig
from core.base import BaseAnalyzer
from core.errors import (
    AutomatonError,
    BtpViolatedError,
    BudgetExceededError,
    ExplorationInconclusiveError,
    NotTwinnedError,
    ParseError,
    PumpLimitExceededError,
    SizeBoundExceededError,
    StateCapExceededError,
)
from utils.constants import EXIT_FAILS, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE
from version import __version__, get_app_info

# 预算不足类的异常
INCONCLUSIVE_ERRORS = (
    BudgetExceededError,
    ExplorationInconclusiveError,
    PumpLimitExceededError,
    StateCapExceededError,
    SizeBoundExceededError,
)


class CommandLineApp(FileHandlerMixin, AnalysisHandlerMixin, ConversionHandlerMixin):
    """命令行应用"""

    def __init__(self):
        self.config = AnalysisConfig()
        self.verbose = False
        self.threshold: Optional[int] = None

    # ------------------------------------------------------------ 输出

    def emit(self, text: str = "") -> None:
        """结构化结果输出到 stdout"""
        print(text)

    def log_message(self, *args) -> None:
        """进度日志输出到 stderr（仅 --verbose）"""
        print(*args, file=sys.stderr)

    def error(self, message: str) -> None:
        print(f"错误: {message}", file=sys.stderr)

    def prepare(self, analyzer: BaseAnalyzer) -> BaseAnalyzer:
        """--verbose 时给分析器安装日志回调"""
        if self.verbose:
            analyzer.set_log_callback(self.log_message)
        return analyzer

    # ------------------------------------------------------------ 参数

    def build_parser(self) -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--verbose", "-v", action="store_true", help="输出进度日志")
        common.add_argument("--config", metavar="PATH", help="配置文件路径")
        common.add_argument("--budget", type=int, metavar="N", help="每个阶数最多探索的配置数")
        common.add_argument("--len-bound", type=int, metavar="N", help="穷举校验的单词长度")
        common.add_argument("--threshold", type=int, metavar="N", help="分解的起始延迟阈值")

        info = get_app_info()
        parser = argparse.ArgumentParser(
            prog="wa-seq",
            description=f"{info['app_name']} {info['version']}: {info['description']}",
        )
        parser.add_argument("--version", action="version", version=__version__)
        sub = parser.add_subparsers(dest="command", metavar="COMMAND")
        sub.required = True

        def command(name: str, help_text: str) -> argparse.ArgumentParser:
            return sub.add_parser(name, parents=[common], help=help_text)

        p = command("eval", "在单词上求值")
        p.add_argument("file")
        p.add_argument("words", nargs="+", help="单词（ε 表示空单词）")
        p.set_defaults(handler=self.cmd_eval)

        p = command("check-btp", "判定 BTP-k")
        p.add_argument("-k", type=int, required=True)
        p.add_argument("file")
        p.set_defaults(handler=self.cmd_check_btp)

        p = command("degree", "计算顺序度")
        p.add_argument("--max", type=int, default=4, dest="k_max")
        p.add_argument("file")
        p.set_defaults(handler=self.cmd_degree)

        p = command("determinize", "BTP-1 成立时的顺序化")
        p.add_argument("file")
        p.add_argument("-o", "--output")
        p.set_defaults(handler=self.cmd_determinize)

        p = command("decompose", "k 顺序分解")
        p.add_argument("-k", type=int, required=True)
        p.add_argument("file")
        p.add_argument("-o", "--output", metavar="DIR")
        p.set_defaults(handler=self.cmd_decompose)

        p = command("to-cra", "顺序自动机转换为独立寄存器 CRA")
        p.add_argument("files", nargs="+")
        p.add_argument("-o", "--output")
        p.set_defaults(handler=self.cmd_to_cra)

        p = command("from-cra", "独立寄存器 CRA 转换为加权自动机")
        p.add_argument("file")
        p.add_argument("-o", "--output")
        p.add_argument("--split", metavar="DIR", help="把每个寄存器的投影分别写入目录")
        p.set_defaults(handler=self.cmd_from_cra)

        p = command("positivize", "自由群 CRA 的正化")
        p.add_argument("file")
        p.add_argument("-o", "--output")
        p.set_defaults(handler=self.cmd_positivize)

        p = command("falsify-lip", "由 BTP-k 反例构造违反 Lip-k 的见证")
        p.add_argument("-k", type=int, required=True)
        p.add_argument("-L", type=int, required=True, dest="lip")
        p.add_argument("file")
        p.set_defaults(handler=self.cmd_falsify_lip)

        p = command("oracle-equiv", "穷举校验两个文档的语义是否相同")
        p.add_argument("first")
        p.add_argument("second")
        p.set_defaults(handler=self.cmd_oracle_equiv)

        p = command("export-dot", "导出 DOT 图")
        p.add_argument("file")
        p.add_argument("-o", "--output")
        p.set_defaults(handler=self.cmd_export_dot)

        p = command("corpus", "列出或导出内置语料")
        p.add_argument("--dump", metavar="DIR")
        p.set_defaults(handler=self.cmd_corpus)
        return parser

    def apply_options(self, args: argparse.Namespace) -> None:
        """配置文件、环境变量之后，命令行参数最后覆盖"""
        self.verbose = args.verbose
        self.config = AnalysisConfig.load(args.config)
        if args.budget is not None:
            self.config.search.max_configurations = args.budget
        if args.len_bound is not None:
            self.config.len_bound = args.len_bound
            self.config.decomposition.oracle_len = args.len_bound
        self.threshold = args.threshold

    # ------------------------------------------------------------ 运行

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_OK if e.code in (0, None) else EXIT_USAGE
        try:
            self.apply_options(args)
            return args.handler(args)
        except ParseError as e:
            self.error(str(e))
            return EXIT_USAGE
        except (BtpViolatedError, NotTwinnedError) as e:
            self.error(str(e))
            cex = getattr(e, "counterexample", None)
            if cex is not None and getattr(args, "automaton", None) is not None:
                self.emit(cex.describe(args.automaton))
            return EXIT_FAILS
        except INCONCLUSIVE_ERRORS as e:
            self.error(str(e))
            return EXIT_INCONCLUSIVE
        except (AutomatonError, OSError, ValueError) as e:
            self.error(str(e))
            return EXIT_USAGE
        except Exception as e:
            self.error(f"{type(e).__name__}: {e}")
            if self.verbose:
                traceback.print_exc()
            return EXIT_USAGE


def cmd_dispatch(argv: Optional[List[str]] = None) -> int:
    """执行一条命令并返回退出码"""
    return CommandLineApp().run(argv)
