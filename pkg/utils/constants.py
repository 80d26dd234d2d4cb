"""
项目级共享常量模块

本模块定义了项目中多处使用的共享常量，避免在多个文件中重复定义。
"""

import os

# 命令行退出码（供脚本调用方使用的稳定约定）
EXIT_OK = 0  # 成功 / 性质成立
EXIT_FAILS = 1  # 性质不成立，已输出见证
EXIT_USAGE = 2  # 用法错误或解析错误
EXIT_INCONCLUSIVE = 3  # 预算不足，无法下结论

# 覆盖默认搜索预算的环境变量
BUDGET_ENV_VAR = "WASEQ_BUDGET"

# 默认配置文件路径
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEFAULT_CONFIG_FILE = os.path.join(PROJECT_ROOT, "config", "analysis_config.json")

# 幂自动机状态数上限
DEFAULT_POWER_CAP = 10**6

# 每个阶数下最多探索的配置数
DEFAULT_MAX_CONFIGURATIONS = 200_000

# 子集构造的默认上限
DEFAULT_STATE_CAP = 20_000
DEFAULT_NORM_CAP = 4096

# 分解时的实用阈值系数（阈值 = 系数 · M_W · |Q|）
DEFAULT_THRESHOLD_FACTOR = 4
DEFAULT_MAX_ESCALATIONS = 4

# 穷举等价校验的默认单词长度
DEFAULT_ORACLE_LENGTH = 6
# 分解结果校验的单词长度
DEFAULT_DECOMPOSITION_ORACLE_LENGTH = 8

# Lipschitz 反例构造中倍增搜索的上限
DEFAULT_PUMP_LIMIT = 1 << 16

# 正化前的语义扫描长度
DEFAULT_POSITIVIZE_SCAN = 4

# 文件格式中的文档类型
DOCUMENT_AUTOMATON = "automaton"
DOCUMENT_CRA = "cra"
