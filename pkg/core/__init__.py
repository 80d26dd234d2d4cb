"""
Core package for weighted-automata sequentiality analysis.

Modules:
    - group: 群上下文（整数加法群、自由群）与元素运算
    - automaton: 加权自动机模型、运算与幂自动机
    - determinize: 带延迟的子集构造 D_W
    - twinning: 分支孪生性质 BTP-k 与顺序度
    - decompose: k 顺序分解
    - cra: 代价寄存器自动机与正化
    - lipschitz: Lip-k 见证的构造与校验
    - parallel_eval: 多顺序自动机的并行求值
    - serialization: 文件格式与 DOT 导出
    - corpus: 内置测试语料
    - analysis_config: 搜索预算配置
    - errors: 异常定义
"""

from .analysis_config import (
    AnalysisConfig,
    BudgetMode,
    DecompositionBudget,
    ExplorationBudget,
    SearchBudget,
)
from .base import BaseAnalyzer
from .corpus import CorpusEntry, builtin_corpus, corpus_entry, dump_corpus
from .cra import (
    CostRegisterAutomaton,
    Positivizer,
    compute_alive,
    cra_eval,
    cra_to_automaton_union,
    cra_to_kseq,
    kseq_to_cra,
    positivize,
    positivize_bound,
)
from .decompose import (
    DecompositionResult,
    Decomposer,
    decompose_k,
    n_threshold,
    split_state,
    stitch,
)
from .determinize import (
    ExploredFragment,
    SubsetConstruction,
    SubsetState,
    dw_explore,
    dw_initial,
    dw_step,
    sequentialize_btp1,
    witness_runs,
)
from .errors import AutomatonError
from .group import FreeGroup, GroupContext, GroupElement, IntegerGroup, context_from_tag
from .lipschitz import (
    LipschitzFalsifier,
    LipWitness,
    btp_lipschitz_constant,
    falsify_lipschitz,
    find_lip_violation,
    verify_lip_witness,
)
from .parallel_eval import ParallelEvaluator, evaluate_union_parallel
from .serialization import (
    export_dot,
    load_document,
    parse_automaton,
    parse_cra,
    render_automaton,
    render_cra,
    save_document,
)
from .twinning import (
    BtpChecker,
    BtpCounterexample,
    BtpResult,
    BtpStatus,
    DegreeResult,
    check_btp,
    degree_of_sequentiality,
    verify_counterexample,
)

__all__ = [
    # 群
    "GroupContext",
    "GroupElement",
    "IntegerGroup",
    "FreeGroup",
    "context_from_tag",
    # 配置
    "AnalysisConfig",
    "BudgetMode",
    "SearchBudget",
    "ExplorationBudget",
    "DecompositionBudget",
    "BaseAnalyzer",
    "AutomatonError",
    # 子集构造
    "SubsetState",
    "ExploredFragment",
    "SubsetConstruction",
    "dw_initial",
    "dw_step",
    "dw_explore",
    "sequentialize_btp1",
    "witness_runs",
    # 孪生性质
    "BtpChecker",
    "BtpCounterexample",
    "BtpResult",
    "BtpStatus",
    "DegreeResult",
    "check_btp",
    "degree_of_sequentiality",
    "verify_counterexample",
    # 分解
    "Decomposer",
    "DecompositionResult",
    "decompose_k",
    "n_threshold",
    "split_state",
    "stitch",
    # 寄存器自动机
    "CostRegisterAutomaton",
    "Positivizer",
    "cra_eval",
    "kseq_to_cra",
    "cra_to_kseq",
    "cra_to_automaton_union",
    "compute_alive",
    "positivize",
    "positivize_bound",
    # Lipschitz
    "LipWitness",
    "LipschitzFalsifier",
    "verify_lip_witness",
    "falsify_lipschitz",
    "find_lip_violation",
    "btp_lipschitz_constant",
    # 并行求值
    "ParallelEvaluator",
    "evaluate_union_parallel",
    # 文件格式
    "parse_automaton",
    "render_automaton",
    "parse_cra",
    "render_cra",
    "load_document",
    "save_document",
    "export_dot",
    # 语料
    "CorpusEntry",
    "builtin_corpus",
    "corpus_entry",
    "dump_corpus",
]
