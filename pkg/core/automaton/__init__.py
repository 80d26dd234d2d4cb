"""
加权自动机核心模块

- model: 数据模型（WeightedAutomaton, Transition, Run）
- operations: 求值、修剪、并、结构检查、穷举等价校验
- power: 惰性幂自动机
"""

from core.automaton.model import (
    Run,
    Transition,
    WeightedAutomaton,
    WeightedPair,
    empty_automaton,
)
from core.automaton.operations import (
    concatenate,
    connected_components,
    enumerate_runs,
    equiv_up_to,
    evaluate,
    evaluate_all,
    find_distinguishing_word,
    is_structurally_k_sequential,
    is_structurally_sequential,
    kleene_separator,
    mw_constant,
    out_max,
    rename_states,
    restrict_initial,
    sequential_components,
    trim,
    union,
    union_many,
    valuedness_estimate,
)
from core.automaton.power import PowerAutomaton, PowerEdge, StateVector, power

__all__ = [
    # 数据模型
    "WeightedAutomaton",
    "Transition",
    "WeightedPair",
    "Run",
    "empty_automaton",
    # 运算
    "evaluate",
    "evaluate_all",
    "enumerate_runs",
    "trim",
    "union",
    "union_many",
    "rename_states",
    "mw_constant",
    "out_max",
    "valuedness_estimate",
    "is_structurally_sequential",
    "is_structurally_k_sequential",
    "connected_components",
    "sequential_components",
    "equiv_up_to",
    "find_distinguishing_word",
    "restrict_initial",
    "concatenate",
    "kleene_separator",
    # 幂自动机
    "PowerAutomaton",
    "PowerEdge",
    "StateVector",
    "power",
]
