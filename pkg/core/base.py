"""
分析器基础模块

提供各分析器共享的日志回调和取消标志机制。
库默认静默，命令行前端在 --verbose 时安装 print 回调。
"""

from typing import Callable, Optional

from core.analysis_config import AnalysisConfig


def _silent(*_args, **_kwargs) -> None:
    pass


class BaseAnalyzer:
    """分析器基类，提供日志回调、取消标志和配置"""

    def __init__(self, config: Optional[AnalysisConfig] = None):
        self.config = config or AnalysisConfig()
        self.log: Callable = _silent
        self.cancel_flag: Optional[Callable[[], bool]] = None

    def set_log_callback(self, callback: Callable) -> None:
        """设置日志回调函数"""
        self.log = callback

    def set_cancel_flag(self, cancel_flag: Callable[[], bool]) -> None:
        """设置取消标志检查函数"""
        self.cancel_flag = cancel_flag

    def _is_cancelled(self) -> bool:
        """检查是否已取消"""
        return self.cancel_flag is not None and self.cancel_flag()

    def _share_callbacks(self, other: "BaseAnalyzer") -> "BaseAnalyzer":
        """让子分析器沿用本分析器的日志和取消回调"""
        other.log = self.log
        other.cancel_flag = self.cancel_flag
        return other
