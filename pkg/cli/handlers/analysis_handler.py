"""
分析处理器 Mixin

本模块包含 CommandLineApp 中的分析类子命令：
check-btp、degree、determinize、decompose、falsify-lip。
"""

import argparse
import json
import os

from core.decompose import Decomposer, DecompositionResult
from core.determinize import SubsetConstruction
from core.lipschitz import LipschitzFalsifier, btp_lipschitz_constant
from core.serialization import save_document
from core.twinning import BtpChecker, BtpStatus, skeleton_of
from core.twinning.skeleton import BtpResult
from utils.constants import EXIT_FAILS, EXIT_INCONCLUSIVE, EXIT_OK
from utils.words import format_word

STATUS_EXIT = {
    BtpStatus.HOLDS: EXIT_OK,
    BtpStatus.FAILS: EXIT_FAILS,
    BtpStatus.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}

MANIFEST_NAME = "manifest.json"


class AnalysisHandlerMixin:
    """
    分析处理器 Mixin 类

    注意：此类使用 Mixin 模式，self 实际上是 CommandLineApp 实例
    """

    def _report_btp(self, result: BtpResult, automaton) -> None:
        emit = self.emit  # type: ignore[attr-defined]
        emit(f"BTP-{result.k}: {result.status.value} ({result.budget_mode.value})")
        emit(f"configurations: {result.stats.configurations}")
        if result.message:
            emit(f"message: {result.message}")
        if result.counterexample is not None:
            emit(skeleton_of(result.counterexample).summary())
            emit(result.counterexample.describe(automaton))

    def cmd_check_btp(self, args: argparse.Namespace) -> int:
        automaton = self.load_automaton(args.file)  # type: ignore[attr-defined]
        args.automaton = automaton
        checker = self.prepare(BtpChecker(self.config))  # type: ignore[attr-defined]
        result = checker.check(automaton, args.k)
        self._report_btp(result, automaton)
        return STATUS_EXIT[result.status]

    def cmd_degree(self, args: argparse.Namespace) -> int:
        """只把顺序度（或下界 >=d）写到 stdout，逐阶结果写入日志"""
        automaton = self.load_automaton(args.file)  # type: ignore[attr-defined]
        checker = self.prepare(BtpChecker(self.config))  # type: ignore[attr-defined]
        result = checker.degree(automaton, args.k_max)
        for r in result.results:
            checker.log(f"BTP-{r.k}: {r.status.value}")
        self.emit(str(result))  # type: ignore[attr-defined]
        return STATUS_EXIT[result.status]

    def cmd_determinize(self, args: argparse.Namespace) -> int:
        automaton = self.load_automaton(args.file)  # type: ignore[attr-defined]
        explorer = self.prepare(SubsetConstruction(self.config))  # type: ignore[attr-defined]
        fragment = explorer.sequential_fragment(automaton)
        self.write_document(  # type: ignore[attr-defined]
            fragment.to_automaton(), args.output, fragment.labels()
        )
        return EXIT_OK

    def cmd_decompose(self, args: argparse.Namespace) -> int:
        """
        decompose -k K FILE [-o DIR]

        给出目录时写入 machine_<i>.wa.json 和 manifest.json，否则输出并自动机
        """
        automaton = self.load_automaton(args.file)  # type: ignore[attr-defined]
        args.automaton = automaton
        decomposer = self.prepare(Decomposer(self.config))  # type: ignore[attr-defined]
        threshold = self.threshold  # type: ignore[attr-defined]
        result = decomposer.decompose(automaton, args.k, threshold)
        self.emit(  # type: ignore[attr-defined]
            f"{len(result.machines)} sequential machines "
            f"(threshold {result.threshold}, escalations {result.escalations}, "
            f"checked up to length {result.oracle_len})"
        )
        if args.output:
            for path in self._write_decomposition(result, args.file, args.output):
                self.emit(f"已写入 {path}")  # type: ignore[attr-defined]
        else:
            union = result.union()
            if union is not None:
                self.write_document(union, None)  # type: ignore[attr-defined]
        return EXIT_OK

    @staticmethod
    def _write_decomposition(result: DecompositionResult, source: str, directory: str) -> list:
        os.makedirs(directory, exist_ok=True)
        files = []
        paths = []
        for i, machine in enumerate(result.machines, start=1):
            name = f"machine_{i}.wa.json"
            paths.append(save_document(machine, os.path.join(directory, name)))
            files.append(name)
        manifest = {
            "source": os.path.basename(source),
            "k": result.k,
            "threshold": result.threshold,
            "escalations": result.escalations,
            "oracle_len": result.oracle_len,
            "machines": files,
            "splits": [
                {
                    "depth": s.depth,
                    "access_word": format_word(s.access_word),
                    "kept": s.kept,
                    "rest": s.rest,
                    "ranks": list(s.ranks),
                }
                for s in result.splits
            ],
        }
        manifest_path = os.path.join(directory, MANIFEST_NAME)
        with open(manifest_path, "w", encoding="utf-8") as f:
            json.dump(manifest, f, ensure_ascii=False, indent=2)
        paths.append(manifest_path)
        return paths

    def cmd_falsify_lip(self, args: argparse.Namespace) -> int:
        """
        BTP-k 不成立时输出违反 Lip-k 的见证；成立时输出 Lip-k 的常数
        """
        automaton = self.load_automaton(args.file)  # type: ignore[attr-defined]
        args.automaton = automaton
        checker = self.prepare(BtpChecker(self.config))  # type: ignore[attr-defined]
        result = checker.check(automaton, args.k)
        if result.holds:
            constant = btp_lipschitz_constant(automaton, args.k)
            self.emit(  # type: ignore[attr-defined]
                f"BTP-{args.k}: holds; Lip-{args.k} holds with L = {constant}"
            )
            return EXIT_OK
        if result.inconclusive:
            self._report_btp(result, automaton)
            return EXIT_INCONCLUSIVE
        falsifier = self.prepare(LipschitzFalsifier(self.config))  # type: ignore[attr-defined]
        witness = falsifier.falsify(automaton, result.counterexample, args.lip)
        self.emit(witness.describe(automaton.context))  # type: ignore[attr-defined]
        return EXIT_FAILS
