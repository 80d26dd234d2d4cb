"""
命令行处理器模块

将 CommandLineApp 的子命令按功能拆分为多个 Mixin：
- FileHandlerMixin: 文件读写、求值、DOT 导出、语料、穷举等价校验
- AnalysisHandlerMixin: BTP 判定、顺序度、子集构造、分解、Lipschitz 见证
- ConversionHandlerMixin: 顺序自动机与 CRA 的互相转换、正化
"""

from cli.handlers.analysis_handler import AnalysisHandlerMixin
from cli.handlers.conversion_handler import ConversionHandlerMixin
from cli.handlers.file_handlers import FileHandlerMixin

__all__ = [
    "FileHandlerMixin",
    "AnalysisHandlerMixin",
    "ConversionHandlerMixin",
]
