"""
内置测试语料

- W0: 计算 f_last（最后一个字母的出现次数）的加权自动机，顺序度为 2
- W1: W0·#·W0，计算 f_last²，顺序度为 4
- Wstar: f_last 的 # 分隔迭代，不是多顺序的
- C0 / C1: 计算 f_last 与 f_last² 的 CRA（C1 的寄存器不独立）
- 转换器: 恒等、a^n ↦ {a^n, b^n}、a^n ↦ {a^n, a^2n}
- cancel: 更新中带逆字母、语义仍是单词关系的自由群 CRA
"""

import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from core.automaton.model import WeightedAutomaton
from core.automaton.operations import concatenate, kleene_separator
from core.cra import CostRegisterAutomaton
from core.group import FreeGroup, GroupContext, IntegerGroup
from core.serialization import safe_filename, save_document
from core.twinning.skeleton import BtpStatus

Document = Union[WeightedAutomaton, CostRegisterAutomaton]

SEPARATOR = "#"

# 期望值来源标记：文献中给出的结论，或由构造直接推导
FROM_LITERATURE = "[文献]"
DERIVED = "[推导]"


@dataclass
class CorpusEntry:
    """语料条目，期望值附带来源说明"""
    name: str
    document: Document
    description: str = ""
    expected_degree: Optional[int] = None               # None 表示未知或不是多顺序的
    expected_btp: Dict[int, BtpStatus] = field(default_factory=dict)
    provenance: str = ""                                # 期望值的来源，以来源标记开头

    @property
    def automaton(self) -> WeightedAutomaton:
        if not isinstance(self.document, WeightedAutomaton):
            raise TypeError(f"语料 {self.name} 不是加权自动机")
        return self.document

    @property
    def is_cra(self) -> bool:
        return isinstance(self.document, CostRegisterAutomaton)


def _z(ctx: GroupContext, value: int):
    return ctx.element(value)


def w0() -> WeightedAutomaton:
    """f_last：q_a 数 a、q_b 数 b，读最后一个字母时进入 q_f"""
    ctx = IntegerGroup()
    zero, one = _z(ctx, 0), _z(ctx, 1)
    return WeightedAutomaton.build(
        ctx,
        ["a", "b"],
        ["q_a", "q_f", "q_b"],
        [("q_a", zero), ("q_f", zero), ("q_b", zero)],
        [("q_f", zero)],
        [
            ("q_a", "b", zero, "q_a"),
            ("q_a", "a", one, "q_a"),
            ("q_a", "a", one, "q_f"),
            ("q_b", "a", zero, "q_b"),
            ("q_b", "b", one, "q_b"),
            ("q_b", "b", one, "q_f"),
        ],
    )


def w1() -> WeightedAutomaton:
    """f_last²(u#v) = f_last(u) + f_last(v)"""
    base = w0()
    return concatenate(base, base, SEPARATOR)


def wstar() -> WeightedAutomaton:
    """f_last 的迭代：u1#u2#…#un ↦ Σ f_last(ui)"""
    return kleene_separator(w0(), SEPARATOR)


def c0() -> CostRegisterAutomaton:
    """计算 f_last 的 CRA，寄存器 X_a / X_b 分别数 a / b"""
    ctx = IntegerGroup()
    zero, one = _z(ctx, 0), _z(ctx, 1)
    return CostRegisterAutomaton.build(
        ctx,
        ["a", "b"],
        ["q_a", "q_b"],
        "q_a",
        ["X_a", "X_b"],
        [
            (q, "a", "q_a", {"X_a": ("X_a", one)}) for q in ("q_a", "q_b")
        ] + [
            (q, "b", "q_b", {"X_b": ("X_b", one)}) for q in ("q_a", "q_b")
        ],
        [("q_a", "X_a", zero), ("q_b", "X_b", zero)],
    )


def c1() -> CostRegisterAutomaton:
    """计算 f_last² 的 CRA；读 # 时把 f_last(u) 复制到两个寄存器，因此不独立"""
    ctx = IntegerGroup()
    zero, one = _z(ctx, 0), _z(ctx, 1)
    transitions = []
    for phase in ("p", "r"):
        for q in (f"{phase}_a", f"{phase}_b"):
            transitions.append((q, "a", f"{phase}_a", {"X_a": ("X_a", one)}))
            transitions.append((q, "b", f"{phase}_b", {"X_b": ("X_b", one)}))
    for last in ("a", "b"):
        source = f"X_{last}"
        transitions.append(
            (f"p_{last}", SEPARATOR, "r_a", {"X_a": (source, zero), "X_b": (source, zero)})
        )
    return CostRegisterAutomaton.build(
        ctx,
        ["a", "b", SEPARATOR],
        ["p_a", "p_b", "r_a", "r_b"],
        "p_a",
        ["X_a", "X_b"],
        transitions,
        [("r_a", "X_a", zero), ("r_b", "X_b", zero)],
    )


def identity_transducer() -> WeightedAutomaton:
    ctx = FreeGroup(("a", "b"))
    eps = ctx.identity
    return WeightedAutomaton.build(
        ctx,
        ["a", "b"],
        ["q"],
        [("q", eps)],
        [("q", eps)],
        [("q", "a", ctx.word("a"), "q"), ("q", "b", ctx.word("b"), "q")],
    )


def anbn_transducer() -> WeightedAutomaton:
    """a^n ↦ {a^n, b^n}"""
    ctx = FreeGroup(("a", "b"))
    eps = ctx.identity
    return WeightedAutomaton.build(
        ctx,
        ["a"],
        ["p", "r"],
        [("p", eps), ("r", eps)],
        [("p", eps), ("r", eps)],
        [("p", "a", ctx.word("a"), "p"), ("r", "a", ctx.word("b"), "r")],
    )


def an_a2n_transducer() -> WeightedAutomaton:
    """a^n ↦ {a^n, a^2n}"""
    ctx = FreeGroup(("a",))
    eps = ctx.identity
    return WeightedAutomaton.build(
        ctx,
        ["a"],
        ["p", "r"],
        [("p", eps), ("r", eps)],
        [("p", eps), ("r", eps)],
        [("p", "a", ctx.word("a"), "p"), ("r", "a", ctx.word(["a", "a"]), "r")],
    )


def cancelling_cra() -> CostRegisterAutomaton:
    """(xy)^n ↦ (bc)^n：x 写入 b a⁻¹，y 写入 a c"""
    ctx = FreeGroup(("a", "b", "c"))
    return CostRegisterAutomaton.build(
        ctx,
        ["x", "y"],
        ["q0", "q1"],
        "q0",
        ["X"],
        [
            ("q0", "x", "q1", {"X": ("X", ctx.parse("b a'"))}),
            ("q1", "y", "q0", {"X": ("X", ctx.parse("a c"))}),
        ],
        [("q0", "X", ctx.identity)],
    )


def builtin_corpus() -> List[CorpusEntry]:
    """全部内置语料，顺序固定"""
    fails, holds = BtpStatus.FAILS, BtpStatus.HOLDS
    return [
        CorpusEntry(
            "W0",
            w0(),
            "f_last over (Z,+)",
            expected_degree=2,
            expected_btp={1: fails, 2: holds},
            provenance=f"{FROM_LITERATURE} f_last 的顺序度为 2（每个最后字母各一个顺序机器）",
        ),
        CorpusEntry(
            "W1",
            w1(),
            "f_last² = W0 # W0",
            expected_degree=4,
            expected_btp={1: fails, 2: fails, 3: fails, 4: holds},
            provenance=f"{FROM_LITERATURE} 两段各需区分最后字母，最小 k 为 4",
        ),
        CorpusEntry(
            "Wstar",
            wstar(),
            "f_last iterated over # separated blocks",
            expected_btp={1: fails, 2: fails, 3: fails},
            provenance=f"{FROM_LITERATURE} f_last^* 不是多顺序的",
        ),
        CorpusEntry("C0", c0(), "CRA computing f_last", provenance=f"{DERIVED} 两个独立寄存器"),
        CorpusEntry(
            "C1",
            c1(),
            "CRA computing f_last², copying registers",
            provenance=f"{DERIVED} 寄存器不独立",
        ),
        CorpusEntry(
            "identity",
            identity_transducer(),
            "identity transducer over {a,b}",
            expected_degree=1,
            expected_btp={1: holds},
            provenance=f"{DERIVED} 顺序转换器",
        ),
        CorpusEntry(
            "anbn",
            anbn_transducer(),
            "a^n -> {a^n, b^n}",
            expected_degree=2,
            expected_btp={1: fails, 2: holds},
            provenance=f"{DERIVED} 输出不匹配，两条分支各自顺序",
        ),
        CorpusEntry(
            "an_a2n",
            an_a2n_transducer(),
            "a^n -> {a^n, a^2n}",
            expected_degree=2,
            expected_btp={1: fails, 2: holds},
            provenance=f"{DERIVED} 循环输出长度不同，两条分支各自顺序",
        ),
        CorpusEntry(
            "cancel",
            cancelling_cra(),
            "free-group CRA with cancelling updates, (xy)^n -> (bc)^n",
            provenance=f"{DERIVED} 正化示例",
        ),
    ]


def corpus_entry(name: str) -> CorpusEntry:
    for entry in builtin_corpus():
        if entry.name == name:
            return entry
    raise KeyError(f"没有名为 {name!r} 的语料")


def dump_corpus(directory: str) -> List[str]:
    """
    把全部语料写入目录，加权自动机为 <name>.wa.json，CRA 为 <name>.cra.json

    Returns:
        写入的文件路径列表
    """
    os.makedirs(directory, exist_ok=True)
    paths = []
    for entry in builtin_corpus():
        suffix = "cra.json" if entry.is_cra else "wa.json"
        path = os.path.join(directory, f"{safe_filename(entry.name)}.{suffix}")
        paths.append(save_document(entry.document, path))
    return paths
