"""
分支孪生性质判定

- check_btp: 按群的种类分派（交换群走权重比较，自由群走转换器判定）
- check_btp_transducer: 输出为正单词的转换器
- degree_of_sequentiality: 最小的满足 BTP-d 的 d

判定结果三值：Holds（在理论界内穷尽）、Fails（附带已独立校验的反例）、
Inconclusive（用户上限截断了理论上需要的搜索，或搜索被取消）。
"""

from typing import Optional, Type

from core.analysis_config import AnalysisConfig, BudgetMode, SearchBudget
from core.automaton.model import WeightedAutomaton
from core.automaton.operations import mw_constant, trim
from core.base import BaseAnalyzer
from core.errors import NotPositiveError, SizeBoundExceededError, UnsupportedGroupError
from core.group import FreeGroup
from core.twinning.search import (
    CommutativeSearch,
    SearchAborted,
    TransducerSearch,
    TwinningSearch,
)
from core.twinning.skeleton import BtpResult, BtpStatus, DegreeResult
from core.twinning.verifier import counterexample_problems


class BtpChecker(BaseAnalyzer):
    """BTP-k 判定器"""

    def check(self, automaton: WeightedAutomaton, k: int) -> BtpResult:
        """
        判定 W 是否满足 BTP-k

        Args:
            automaton: 加权自动机
            k: 阶数 (k ≥ 1)

        Returns:
            BtpResult

        Raises:
            UnsupportedGroupError: 非交换且非自由群
            NotPositiveError: 自由群上的权重不是正单词
        """
        ctx = automaton.context
        if ctx.is_commutative:
            return self._run(CommutativeSearch, automaton, k)
        return self.check_transducer(automaton, k)

    def check_transducer(self, automaton: WeightedAutomaton, k: int) -> BtpResult:
        """判定转换器（自由群上的正单词输出）是否满足 BTP-k"""
        if not isinstance(automaton.context, FreeGroup):
            raise UnsupportedGroupError(f"群 {automaton.context.tag()} 不是自由群")
        for weight in automaton.weights():
            if not automaton.context.is_positive(weight):
                raise NotPositiveError(
                    f"权重 {automaton.context.format(weight)!r} 不是正单词，不是转换器"
                )
        return self._run(TransducerSearch, automaton, k)

    def budget_mode(self, automaton: WeightedAutomaton, k: int) -> BudgetMode:
        """用户上限是否低于理论界"""
        budget = self.config.search
        n = len(automaton.states)
        if budget.cycle_len_cap is not None and budget.cycle_len_cap < 2 * n ** (k + 1):
            return BudgetMode.PRACTICAL
        if budget.closeness_cap is not None and isinstance(automaton.context, FreeGroup):
            if budget.closeness_cap < mw_constant(automaton) * n ** (k + 1):
                return BudgetMode.PRACTICAL
        return BudgetMode.THEORETICAL

    def _run(
        self, search_cls: Type[TwinningSearch], automaton: WeightedAutomaton, k: int
    ) -> BtpResult:
        if k < 1:
            raise ValueError("阶数 k 必须为正整数")
        trimmed = trim(automaton)
        mode = self.budget_mode(trimmed, k)
        if trimmed.is_empty():
            return BtpResult(k, BtpStatus.HOLDS, budget_mode=mode, message="空关系平凡满足")

        self.log(f"检查 BTP-{k}: {trimmed.summary()}")
        search = search_cls(trimmed, k, self.config.search, self)
        try:
            cex = search.run()
        except (SearchAborted, SizeBoundExceededError) as e:
            self.log(f"BTP-{k} 搜索中止: {e}")
            return BtpResult(
                k, BtpStatus.INCONCLUSIVE, budget_mode=mode, stats=search.stats, message=str(e)
            )
        self.log(
            f"BTP-{k}: 探索 {search.stats.configurations} 个配置, "
            f"检查 {search.stats.skeletons} 个分叉点"
        )

        if cex is None:
            if search.truncated:
                return BtpResult(
                    k,
                    BtpStatus.INCONCLUSIVE,
                    budget_mode=BudgetMode.PRACTICAL,
                    stats=search.stats,
                    message="用户上限截断了理论上需要的搜索",
                )
            return BtpResult(k, BtpStatus.HOLDS, budget_mode=mode, stats=search.stats)

        problems = counterexample_problems(trimmed, cex, k)
        if problems:
            return BtpResult(
                k,
                BtpStatus.INCONCLUSIVE,
                budget_mode=mode,
                stats=search.stats,
                message="反例未通过校验: " + "; ".join(problems),
            )
        return BtpResult(k, BtpStatus.FAILS, cex, mode, search.stats)

    def degree(self, automaton: WeightedAutomaton, k_max: int) -> DegreeResult:
        """
        顺序度：最小的 d ≤ k_max 使 BTP-d 成立

        遇到 Inconclusive 时停止，lower_bound 为已知失败的阶数加一。
        """
        results = []
        for d in range(1, k_max + 1):
            if self._is_cancelled():
                return DegreeResult(BtpStatus.INCONCLUSIVE, None, d, results)
            result = self.check(automaton, d)
            results.append(result)
            if result.holds:
                self.log(f"顺序度为 {d}")
                return DegreeResult(BtpStatus.HOLDS, d, d, results)
            if result.inconclusive:
                return DegreeResult(BtpStatus.INCONCLUSIVE, None, d, results)
        return DegreeResult(BtpStatus.FAILS, None, k_max + 1, results)


def _checker(budget: Optional[SearchBudget], config: Optional[AnalysisConfig]) -> BtpChecker:
    checker = BtpChecker(config)
    if budget is not None:
        checker.config.search = budget
    return checker


def check_btp(
    automaton: WeightedAutomaton,
    k: int,
    budget: Optional[SearchBudget] = None,
    config: Optional[AnalysisConfig] = None,
) -> BtpResult:
    """判定 BTP-k"""
    return _checker(budget, config).check(automaton, k)


def check_btp_transducer(
    automaton: WeightedAutomaton,
    k: int,
    budget: Optional[SearchBudget] = None,
    config: Optional[AnalysisConfig] = None,
) -> BtpResult:
    """判定转换器的 BTP-k"""
    return _checker(budget, config).check_transducer(automaton, k)


def degree_of_sequentiality(
    automaton: WeightedAutomaton,
    k_max: int,
    budget: Optional[SearchBudget] = None,
    config: Optional[AnalysisConfig] = None,
) -> DegreeResult:
    """顺序度，全部失败时为 AtLeast(k_max + 1)"""
    return _checker(budget, config).degree(automaton, k_max)
