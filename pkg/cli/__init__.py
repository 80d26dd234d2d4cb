"""
命令行模块

- app: CommandLineApp 与子命令解析
- handlers: 子命令处理器 Mixin
"""

from cli.app import CommandLineApp, cmd_dispatch

__all__ = ["CommandLineApp", "cmd_dispatch"]
