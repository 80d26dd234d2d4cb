"""
文件格式模块

加权自动机和 CRA 都保存为 JSON 文档（utf-8，缩进 2），用 "kind" 区分：

    {"kind": "automaton", "group": "Z", "alphabet": [...], "states": [...],
     "init": [[q, e]], "final": [[q, e]], "trans": [[src, letter, e, dst]]}

    {"kind": "cra", "group": "free:ab", "alphabet": [...], "states": [...],
     "init": q, "registers": [...], "trans": [[src, letter, dst, {Y: [X, e]}]],
     "output": [[q, X, e]], "independent": true}

元素 e 为群元素文本（整数群也接受 JSON 整数）。输出顺序是规范的，渲染结果确定。
另提供基于 graphviz 的 DOT 导出。
"""

import json
import os
import re
from typing import Any, Dict, List, Optional, Union

import graphviz

from core.automaton.model import WeightedAutomaton
from core.cra import CostRegisterAutomaton
from core.errors import AutomatonError, ParseError
from core.group import GroupContext, GroupElement, context_from_tag, parse_element
from utils.constants import DOCUMENT_AUTOMATON, DOCUMENT_CRA

Document = Union[WeightedAutomaton, CostRegisterAutomaton]


def _locate(text: str, needle: str) -> Dict[str, int]:
    """needle 在文本中第一次出现的行列号（从 1 开始），找不到时返回 0"""
    index = text.find(needle)
    if index < 0:
        return {"line": 0, "column": 0}
    line = text.count("\n", 0, index) + 1
    column = index - (text.rfind("\n", 0, index) + 1) + 1
    return {"line": line, "column": column}


class _Reader:
    """带位置信息的字段读取"""

    def __init__(self, text: str, data: Dict[str, Any]):
        self.text = text
        self.data = data

    def fail(self, message: str, key: str) -> ParseError:
        return ParseError(message, **_locate(self.text, f'"{key}"'))

    def field(self, key: str, kind: type) -> Any:
        if key not in self.data:
            raise ParseError(f"缺少字段 {key!r}")
        value = self.data[key]
        if not isinstance(value, kind):
            raise self.fail(f"字段 {key!r} 应为 {kind.__name__}", key)
        return value

    def strings(self, key: str) -> List[str]:
        values = self.field(key, list)
        if not all(isinstance(v, str) for v in values):
            raise self.fail(f"字段 {key!r} 必须是字符串列表", key)
        return values

    def context(self) -> GroupContext:
        tag = self.field("group", str)
        try:
            return context_from_tag(tag)
        except AutomatonError as e:
            raise self.fail(str(e), "group") from None

    def element(self, ctx: GroupContext, value: Any, key: str) -> GroupElement:
        try:
            return parse_element(ctx, value)
        except AutomatonError as e:
            raise self.fail(f"{key}: {e}", key) from None

    def entries(self, key: str, width: int) -> List[list]:
        rows = self.field(key, list)
        for row in rows:
            if not isinstance(row, list) or len(row) != width:
                raise self.fail(f"字段 {key!r} 的每一项必须是长度为 {width} 的列表", key)
        return rows


def _load_json(text: str) -> Dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(data, dict):
        raise ParseError("文档必须是 JSON 对象", 1, 1)
    return data


# ---------------------------------------------------------------- 加权自动机


def parse_automaton(text: str) -> WeightedAutomaton:
    """
    解析加权自动机文档

    Raises:
        ParseError: JSON 语法、字段类型、群标记或元素语法错误
    """
    data = _load_json(text)
    kind = data.get("kind", DOCUMENT_AUTOMATON)
    if kind != DOCUMENT_AUTOMATON:
        raise ParseError(
            f"文档类型是 {kind!r}，需要 {DOCUMENT_AUTOMATON!r}", **_locate(text, '"kind"')
        )
    return _automaton_from(_Reader(text, data))


def _automaton_from(reader: _Reader) -> WeightedAutomaton:
    ctx = reader.context()
    alphabet = reader.strings("alphabet")
    states = reader.strings("states")
    initial = [(q, reader.element(ctx, e, "init")) for q, e in reader.entries("init", 2)]
    final = [(q, reader.element(ctx, e, "final")) for q, e in reader.entries("final", 2)]
    transitions = [
        (src, letter, reader.element(ctx, e, "trans"), dst)
        for src, letter, e, dst in reader.entries("trans", 4)
    ]
    try:
        return WeightedAutomaton.build(ctx, alphabet, states, initial, final, transitions)
    except AutomatonError as e:
        raise ParseError(str(e)) from None


def automaton_to_dict(
    automaton: WeightedAutomaton, labels: Optional[Dict[str, List[List[str]]]] = None
) -> Dict[str, Any]:
    ctx = automaton.context
    data: Dict[str, Any] = {
        "kind": DOCUMENT_AUTOMATON,
        "group": ctx.tag(),
        "alphabet": list(automaton.alphabet),
        "states": list(automaton.states),
        "init": [[q, ctx.format(w)] for q, w in automaton.sorted_initial()],
        "final": [[q, ctx.format(w)] for q, w in automaton.sorted_final()],
        "trans": [
            [t.src, t.letter, ctx.format(t.weight), t.dst] for t in automaton.transition_list
        ],
    }
    if labels:
        data["labels"] = labels
    return data


def render_automaton(
    automaton: WeightedAutomaton, labels: Optional[Dict[str, List[List[str]]]] = None
) -> str:
    """
    渲染为规范 JSON 文本

    Args:
        automaton: 加权自动机
        labels: 可选的状态标注（例如子集构造的 (状态, 延迟) 列表），解析时忽略
    """
    return json.dumps(automaton_to_dict(automaton, labels), ensure_ascii=False, indent=2) + "\n"


# ---------------------------------------------------------------- CRA


def parse_cra(text: str) -> CostRegisterAutomaton:
    """
    解析 CRA 文档

    Raises:
        ParseError: 格式错误，或 "independent" 标记与更新不一致
    """
    data = _load_json(text)
    if data.get("kind") != DOCUMENT_CRA:
        raise ParseError(f"文档类型需要 {DOCUMENT_CRA!r}", **_locate(text, '"kind"'))
    return _cra_from(_Reader(text, data))


def _cra_from(reader: _Reader) -> CostRegisterAutomaton:
    ctx = reader.context()
    alphabet = reader.strings("alphabet")
    states = reader.strings("states")
    initial = reader.field("init", str)
    registers = reader.strings("registers")
    transitions = []
    for src, letter, dst, update in reader.entries("trans", 4):
        if not isinstance(update, dict):
            raise reader.fail("转移的更新必须是 {寄存器: [寄存器, 元素]} 对象", "trans")
        parsed = {}
        for target, rhs in update.items():
            if not isinstance(rhs, list) or len(rhs) != 2:
                raise reader.fail(f"寄存器 {target!r} 的更新必须是 [寄存器, 元素]", "trans")
            parsed[target] = (rhs[0], reader.element(ctx, rhs[1], "trans"))
        transitions.append((src, letter, dst, parsed))
    output = [
        (q, x, reader.element(ctx, e, "output")) for q, x, e in reader.entries("output", 3)
    ]
    try:
        cra = CostRegisterAutomaton.build(
            ctx, alphabet, states, initial, registers, transitions, output
        )
    except AutomatonError as e:
        raise ParseError(str(e)) from None
    declared = reader.data.get("independent")
    if declared is not None and bool(declared) != cra.independent:
        raise reader.fail("independent 标记与更新不一致", "independent")
    return cra


def cra_to_dict(cra: CostRegisterAutomaton) -> Dict[str, Any]:
    ctx = cra.context
    return {
        "kind": DOCUMENT_CRA,
        "group": ctx.tag(),
        "alphabet": list(cra.alphabet),
        "states": list(cra.states),
        "init": cra.initial,
        "registers": list(cra.registers),
        "trans": [
            [src, letter, dst, {y: [x, ctx.format(e)] for y, (x, e) in update.items()}]
            for src, letter, dst, update in cra.sorted_transitions()
        ],
        "output": [[q, x, ctx.format(e)] for q, x, e in cra.sorted_output()],
        "independent": cra.independent,
    }


def render_cra(cra: CostRegisterAutomaton) -> str:
    return json.dumps(cra_to_dict(cra), ensure_ascii=False, indent=2) + "\n"


# ---------------------------------------------------------------- 文件


def parse_document(text: str) -> Document:
    """按 "kind" 字段解析任一种文档（缺省为加权自动机）"""
    data = _load_json(text)
    kind = data.get("kind", DOCUMENT_AUTOMATON)
    reader = _Reader(text, data)
    if kind == DOCUMENT_AUTOMATON:
        return _automaton_from(reader)
    if kind == DOCUMENT_CRA:
        return _cra_from(reader)
    raise reader.fail(f"未知的文档类型 {kind!r}", "kind")


def render_document(document: Document) -> str:
    if isinstance(document, CostRegisterAutomaton):
        return render_cra(document)
    return render_automaton(document)


def load_document(path: str) -> Document:
    """
    读取文件并解析

    Raises:
        FileNotFoundError: 文件不存在
        ParseError: 文件内容不合法
    """
    with open(path, "r", encoding="utf-8") as f:
        return parse_document(f.read())


def load_automaton(path: str) -> WeightedAutomaton:
    document = load_document(path)
    if not isinstance(document, WeightedAutomaton):
        raise ParseError(f"{path} 不是加权自动机文档")
    return document


def load_cra(path: str) -> CostRegisterAutomaton:
    document = load_document(path)
    if not isinstance(document, CostRegisterAutomaton):
        raise ParseError(f"{path} 不是 CRA 文档")
    return document


def save_document(document: Document, path: str, labels: Optional[Dict] = None) -> str:
    """写入文件，必要时创建目录，返回路径"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    if isinstance(document, WeightedAutomaton):
        text = render_automaton(document, labels)
    else:
        text = render_cra(document)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path


# ---------------------------------------------------------------- DOT 导出


def _node_id(index: int) -> str:
    return f"s{index}"


def _label(text: str) -> str:
    return text if text else "ε"


def automaton_to_dot(automaton: WeightedAutomaton, name: str = "W") -> graphviz.Digraph:
    """
    加权自动机的 DOT 图：状态为节点，转移标注 "字母 : 权重"，
    初始和终止权重画成悬空边
    """
    ctx = automaton.context
    g = graphviz.Digraph(name, graph_attr={"rankdir": "LR", "label": ctx.tag()})
    g.attr("node", shape="circle")
    ids = {q: _node_id(i) for i, q in enumerate(automaton.states)}
    for q in automaton.states:
        g.node(ids[q], label=q)
    for i, (q, w) in enumerate(automaton.sorted_initial()):
        source = f"in{i}"
        g.node(source, label="", shape="point")
        g.edge(source, ids[q], label=_label(ctx.format(w)))
    for i, (q, w) in enumerate(automaton.sorted_final()):
        target = f"out{i}"
        g.node(target, label="", shape="point")
        g.edge(ids[q], target, label=_label(ctx.format(w)))
    for t in automaton.transition_list:
        g.edge(ids[t.src], ids[t.dst], label=f"{t.letter} : {_label(ctx.format(t.weight))}")
    return g


def cra_to_dot(cra: CostRegisterAutomaton, name: str = "C") -> graphviz.Digraph:
    """CRA 的 DOT 图：转移标注字母和非平凡的寄存器更新"""
    ctx = cra.context
    g = graphviz.Digraph(name, graph_attr={"rankdir": "LR", "label": ctx.tag()})
    g.attr("node", shape="circle")
    ids = {q: _node_id(i) for i, q in enumerate(cra.states)}
    for q in cra.states:
        g.node(ids[q], label=q)
    g.node("start", label="", shape="point")
    g.edge("start", ids[cra.initial])
    for i, (q, x, e) in enumerate(cra.sorted_output()):
        target = f"out{i}"
        g.node(target, label="", shape="point")
        g.edge(ids[q], target, label=f"{x}·{_label(ctx.format(e))}")
    for src, letter, dst, update in cra.sorted_transitions():
        parts = [
            f"{y}:={x}·{ctx.format(e)}"
            for y in cra.registers
            for x, e in [update[y]]
            if x != y or not ctx.is_identity(e)
        ]
        label = letter if not parts else f"{letter} | " + ", ".join(parts)
        g.edge(ids[src], ids[dst], label=label)
    return g


def to_dot(document: Document) -> graphviz.Digraph:
    if isinstance(document, CostRegisterAutomaton):
        return cra_to_dot(document)
    return automaton_to_dot(document)


def export_dot(document: Document, path: Optional[str] = None) -> str:
    """
    生成 DOT 源文本，给出 path 时同时写入文件（只写源文本，不调用 dot 程序）
    """
    source = to_dot(document).source
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(source)
    return source


_SAFE_NAME = re.compile(r"[^0-9A-Za-z_.-]+")


def safe_filename(name: str) -> str:
    """把语料名等转换为文件名"""
    return _SAFE_NAME.sub("_", name).strip("_") or "automaton"
