"""
分析配置模块

集中管理各算法模块的搜索预算。配置按以下顺序叠加：
1. 数据类中的默认值
2. config/analysis_config.json（缺失的键保持默认值，未知的键忽略）
3. 环境变量 WASEQ_BUDGET（整数，覆盖 max_configurations）
4. 命令行参数（由前端直接修改数据类字段）
"""

import json
import os
from dataclasses import asdict, dataclass, field, fields
from enum import Enum
from typing import Any, Dict, Optional

from utils.constants import (
    BUDGET_ENV_VAR,
    DEFAULT_CONFIG_FILE,
    DEFAULT_DECOMPOSITION_ORACLE_LENGTH,
    DEFAULT_MAX_CONFIGURATIONS,
    DEFAULT_MAX_ESCALATIONS,
    DEFAULT_NORM_CAP,
    DEFAULT_ORACLE_LENGTH,
    DEFAULT_POSITIVIZE_SCAN,
    DEFAULT_POWER_CAP,
    DEFAULT_PUMP_LIMIT,
    DEFAULT_STATE_CAP,
    DEFAULT_THRESHOLD_FACTOR,
)


class BudgetMode(Enum):
    """结果是在理论界内还是在用户上限内得到的"""
    THEORETICAL = "theoretical"  # 搜索覆盖了理论界
    PRACTICAL = "practical"      # 搜索被用户上限截断


@dataclass
class SearchBudget:
    """孪生性质搜索预算"""
    max_configurations: int = DEFAULT_MAX_CONFIGURATIONS  # 每个阶数最多探索的配置数
    power_cap: int = DEFAULT_POWER_CAP                    # |Q|^p 上限
    cycle_len_cap: Optional[int] = None                   # 循环长度上限（None 表示理论界 2·n^p）
    closeness_cap: Optional[int] = None                   # 转换器接近界（None 表示 M_T·n^{k+1}）


@dataclass
class ExplorationBudget:
    """带延迟子集构造的探索预算"""
    state_cap: int = DEFAULT_STATE_CAP                # 最多探索的子集状态数
    norm_cap: int = DEFAULT_NORM_CAP                  # 实用延迟上限
    valuedness_len: Optional[int] = None              # 值数估计的单词长度（None 表示 |Q|²）
    valuedness_override: Optional[int] = None         # 用户直接给出的值数 ℓ


@dataclass
class DecompositionBudget:
    """k 顺序分解预算"""
    threshold_factor: int = DEFAULT_THRESHOLD_FACTOR       # 实用阈值系数
    max_escalations: int = DEFAULT_MAX_ESCALATIONS         # 阈值翻倍次数上限
    oracle_len: int = DEFAULT_DECOMPOSITION_ORACLE_LENGTH  # 等价校验的单词长度


@dataclass
class AnalysisConfig:
    """全部分析配置"""
    search: SearchBudget = field(default_factory=SearchBudget)
    exploration: ExplorationBudget = field(default_factory=ExplorationBudget)
    decomposition: DecompositionBudget = field(default_factory=DecompositionBudget)
    len_bound: int = DEFAULT_ORACLE_LENGTH
    lip_pump_limit: int = DEFAULT_PUMP_LIMIT
    positivize_scan: int = DEFAULT_POSITIVIZE_SCAN

    @classmethod
    def load(
        cls,
        path: Optional[str] = None,
        environ: Optional[Dict[str, str]] = None,
    ) -> "AnalysisConfig":
        """
        加载配置

        Args:
            path: 配置文件路径，None 时使用默认路径（不存在则跳过）
            environ: 环境变量映射，None 时使用 os.environ

        Returns:
            合并后的配置
        """
        config = cls()
        config_path = path or DEFAULT_CONFIG_FILE
        if os.path.exists(config_path):
            with open(config_path, "r", encoding="utf-8") as f:
                data = json.load(f)
            config.update_from_dict(data)
        elif path:
            raise FileNotFoundError(f"配置文件不存在: {path}")

        env = os.environ if environ is None else environ
        budget = env.get(BUDGET_ENV_VAR, "").strip()
        if budget:
            try:
                config.search.max_configurations = int(budget)
            except ValueError:
                raise ValueError(f"环境变量 {BUDGET_ENV_VAR} 必须是整数: {budget!r}") from None
        return config

    def update_from_dict(self, data: Dict[str, Any]) -> None:
        """用字典覆盖字段，未知键忽略"""
        sections = {
            "search": self.search,
            "exploration": self.exploration,
            "decomposition": self.decomposition,
        }
        for key, value in data.items():
            if key in sections and isinstance(value, dict):
                section = sections[key]
                names = {f.name for f in fields(section)}
                for sub_key, sub_value in value.items():
                    if sub_key in names:
                        setattr(section, sub_key, sub_value)
            elif key in ("len_bound", "lip_pump_limit", "positivize_scan"):
                setattr(self, key, int(value))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, ensure_ascii=False, indent=2)
