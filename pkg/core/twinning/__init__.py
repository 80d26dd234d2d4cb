"""
分支孪生性质 (BTP-k)

- skeleton: 反例、骨架与结果类型
- search: 幂自动机上的分离树搜索
- verifier: 与搜索无关的反例校验
- checker: 判定入口与顺序度
"""

from core.twinning.checker import (
    BtpChecker,
    check_btp,
    check_btp_transducer,
    degree_of_sequentiality,
)
from core.twinning.search import VectorGraph, find_diff_cycle
from core.twinning.skeleton import (
    BtpCounterexample,
    BtpResult,
    BtpStatus,
    DegreeResult,
    Evidence,
    RunSegment,
    Separation,
    Skeleton,
    skeleton_of,
)
from core.twinning.verifier import counterexample_problems, verify_counterexample

__all__ = [
    # 判定
    "BtpChecker",
    "check_btp",
    "check_btp_transducer",
    "degree_of_sequentiality",
    # 搜索
    "VectorGraph",
    "find_diff_cycle",
    # 结果类型
    "BtpCounterexample",
    "BtpResult",
    "BtpStatus",
    "DegreeResult",
    "Evidence",
    "RunSegment",
    "Separation",
    "Skeleton",
    "skeleton_of",
    # 校验
    "counterexample_problems",
    "verify_counterexample",
]
