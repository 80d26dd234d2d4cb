"""
转换处理器 Mixin

本模块包含 CommandLineApp 中的转换类子命令：to-cra、from-cra、positivize。
"""

import argparse
import os
from typing import List

from core.automaton.model import WeightedAutomaton
from core.automaton.operations import (
    is_structurally_k_sequential,
    sequential_components,
    union_many,
)
from core.cra import Positivizer, cra_to_kseq, kseq_to_cra, positivize_bound
from core.errors import NotSequentialInputError
from core.serialization import save_document
from utils.constants import EXIT_OK


class ConversionHandlerMixin:
    """
    转换处理器 Mixin 类

    注意：此类使用 Mixin 模式，self 实际上是 CommandLineApp 实例
    """

    def _sequential_members(self, paths: List[str]) -> List[WeightedAutomaton]:
        """
        读取顺序自动机；单个文件是 k 顺序自动机时按连通分量拆开
        """
        machines = [self.load_automaton(p) for p in paths]  # type: ignore[attr-defined]
        if len(machines) != 1:
            return machines
        machine = machines[0]
        k = is_structurally_k_sequential(machine)
        if k is None:
            raise NotSequentialInputError(f"{paths[0]} 不是结构 k 顺序的")
        return [c for c in sequential_components(machine) if c.initial]

    def cmd_to_cra(self, args: argparse.Namespace) -> int:
        machines = self._sequential_members(args.files)
        cra = kseq_to_cra(machines)
        self.write_document(cra, args.output)  # type: ignore[attr-defined]
        return EXIT_OK

    def cmd_from_cra(self, args: argparse.Namespace) -> int:
        """独立 CRA 的寄存器投影之并；--split 时每个投影单独写入"""
        cra = self.load_cra(args.file)  # type: ignore[attr-defined]
        machines = cra_to_kseq(cra)
        if args.split:
            os.makedirs(args.split, exist_ok=True)
            for register, machine in zip(cra.registers, machines):
                path = save_document(machine, os.path.join(args.split, f"{register}.wa.json"))
                self.emit(f"已写入 {path}")  # type: ignore[attr-defined]
        self.write_document(union_many(machines), args.output)  # type: ignore[attr-defined]
        return EXIT_OK

    def cmd_positivize(self, args: argparse.Namespace) -> int:
        cra = self.load_cra(args.file)  # type: ignore[attr-defined]
        positivizer = self.prepare(Positivizer(self.config))  # type: ignore[attr-defined]
        bound, m, s = positivize_bound(cra)
        positivizer.log(f"N = {bound} (m = {m}, s = {s})")
        result = positivizer.positivize(cra)
        self.write_document(result, args.output)  # type: ignore[attr-defined]
        return EXIT_OK
