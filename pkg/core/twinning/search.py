"""
分支孪生性质的分离树搜索

BTP-k 的反例是 k+1 条运行组成的树：同组运行读相同输入，在某个同步循环处
一部分运行对的延迟发生改变，之后各组分开继续。搜索在幂自动机 W^p 上进行：

1. 配置：交换群时为状态向量；转换器时为 (状态向量, 每对运行的延迟状态)
2. 配置是"好的"：所在强连通分量非平凡，分量内的循环把坐标分成至少两个
   不可分离类，且每个大小 ≥ 2 的类在更低阶数下可解
3. 可解：从配置出发能到达好的配置（广度优先，带记忆）

强连通分量用增量 Tarjan 算法按需计算。找到反例后自顶向下组装：
对每个分叉点合成一个同时分离所有跨类运行对的循环 c·d^n。
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Set, Tuple

from core.analysis_config import SearchBudget
from core.automaton.model import WeightedAutomaton, WeightedPair
from core.automaton.operations import mw_constant
from core.automaton.power import PowerAutomaton, PowerEdge, StateVector, path_word
from core.base import BaseAnalyzer
from core.group import GroupElement
from core.twinning.skeleton import (
    BtpCounterexample,
    Evidence,
    RunPair,
    RunSegment,
    SearchStats,
    Separation,
)

Config = Hashable
Cycle = List[PowerEdge]

FAR = "F"  # 延迟超过接近界
MISMATCH = "M"  # 累计输出已不匹配


class SearchAborted(Exception):
    """搜索因预算耗尽或取消而中止"""


class VectorGraph:
    """
    W^p 向量图上的强连通分量与路径

    分量按需用迭代 Tarjan 算法计算：从未分配的向量出发，
    已分配的向量所在分量已经完整，不会再被访问。
    """

    def __init__(self, power: PowerAutomaton):
        self.power = power
        self._component: Dict[StateVector, int] = {}
        self._members: List[Tuple[StateVector, ...]] = []
        self._internal: Dict[int, List[PowerEdge]] = {}
        self._trees: Dict[StateVector, Dict[StateVector, Optional[PowerEdge]]] = {}
        self._backs: Dict[StateVector, Dict[StateVector, Optional[PowerEdge]]] = {}

    @property
    def order(self) -> int:
        return self.power.order

    def component_id(self, vector: StateVector) -> int:
        if vector not in self._component:
            self._tarjan(vector)
        return self._component[vector]

    def component(self, vector: StateVector) -> Tuple[StateVector, ...]:
        return self._members[self.component_id(vector)]

    def visited(self) -> int:
        return len(self._component)

    def _tarjan(self, root: StateVector) -> None:
        index: Dict[StateVector, int] = {root: 0}
        low: Dict[StateVector, int] = {root: 0}
        stack = [root]
        on_stack = {root}
        work = [(root, 0)]
        counter = 1
        while work:
            vector, i = work[-1]
            edges = self.power.successors(vector)
            if i < len(edges):
                work[-1] = (vector, i + 1)
                target = edges[i].target
                if target in self._component:
                    continue
                if target not in index:
                    index[target] = low[target] = counter
                    counter += 1
                    stack.append(target)
                    on_stack.add(target)
                    work.append((target, 0))
                elif target in on_stack:
                    low[vector] = min(low[vector], index[target])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[vector])
            if low[vector] == index[vector]:
                members = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    members.append(member)
                    if member == vector:
                        break
                automaton = self.power.automaton
                members.sort(key=lambda v: tuple(automaton.state_index(q) for q in v))
                cid = len(self._members)
                self._members.append(tuple(members))
                for member in members:
                    self._component[member] = cid

    def internal_edges(self, vector: StateVector) -> List[PowerEdge]:
        """分量内部的全部边（按成员顺序、再按后继顺序）"""
        cid = self.component_id(vector)
        cached = self._internal.get(cid)
        if cached is None:
            members = set(self._members[cid])
            cached = [
                edge
                for member in self._members[cid]
                for edge in self.power.successors(member)
                if edge.target in members
            ]
            self._internal[cid] = cached
        return cached

    def is_nontrivial(self, vector: StateVector) -> bool:
        return bool(self.internal_edges(vector))

    def _tree(self, root: StateVector) -> Dict[StateVector, Optional[PowerEdge]]:
        """分量内从 root 出发的广度优先树（父边）"""
        tree = self._trees.get(root)
        if tree is None:
            members = set(self.component(root))
            tree = {root: None}
            queue = deque([root])
            while queue:
                vector = queue.popleft()
                for edge in self.power.successors(vector):
                    target = edge.target
                    if target in members and target not in tree:
                        tree[target] = edge
                        queue.append(target)
            self._trees[root] = tree
        return tree

    def _back(self, root: StateVector) -> Dict[StateVector, Optional[PowerEdge]]:
        """分量内回到 root 的反向广度优先树（下一条边）"""
        back = self._backs.get(root)
        if back is None:
            incoming: Dict[StateVector, List[PowerEdge]] = {}
            for edge in self.internal_edges(root):
                incoming.setdefault(edge.target, []).append(edge)
            back = {root: None}
            queue = deque([root])
            while queue:
                vector = queue.popleft()
                for edge in incoming.get(vector, ()):
                    source = edge.source
                    if source not in back:
                        back[source] = edge
                        queue.append(source)
            self._backs[root] = back
        return back

    def path_from(self, root: StateVector, vector: StateVector) -> Cycle:
        tree = self._tree(root)
        path: Cycle = []
        while vector != root:
            edge = tree[vector]
            path.append(edge)  # type: ignore[arg-type]
            vector = edge.source  # type: ignore[union-attr]
        path.reverse()
        return path

    def path_to(self, root: StateVector, vector: StateVector) -> Cycle:
        back = self._back(root)
        path: Cycle = []
        while vector != root:
            edge = back[vector]
            path.append(edge)  # type: ignore[arg-type]
            vector = edge.target  # type: ignore[union-attr]
        return path

    def edge_cycles(self, root: StateVector, edge: PowerEdge) -> List[Cycle]:
        """
        经过 edge 的两个候选循环：root→x·e·y→root 与 root→y·y→root

        坐标势差在 e 上不同的运行对至少被其中之一分离。
        """
        back = self.path_to(root, edge.target)
        return [
            self.path_from(root, edge.source) + [edge] + back,
            self.path_from(root, edge.target) + back,
        ]

    def potentials(
        self, root: StateVector, measure: Callable[[GroupElement], object], plus
    ) -> Dict[StateVector, Tuple]:
        """沿广度优先树累计每个坐标的势"""
        tree = self._tree(root)
        result: Dict[StateVector, Tuple] = {}
        zero = measure(self.power.automaton.context.identity)
        for vector in tree:
            result[vector] = tuple(zero for _ in range(self.order))
        for vector in tree:
            edge = tree[vector]
            if edge is None:
                continue
            # 树按广度优先插入，父节点的势已经确定
            parent = result[edge.source]
            result[vector] = tuple(
                plus(parent[i], measure(edge.transitions[i].weight)) for i in range(self.order)
            )
        return result

    def edge_offsets(
        self, root: StateVector, measure: Callable[[GroupElement], object], plus, minus
    ) -> List[Tuple[PowerEdge, Tuple]]:
        """每条内部边的势差 Δ_t(e) = φ_t(x)·w_t·φ_t(y)⁻¹"""
        phi = self.potentials(root, measure, plus)
        result = []
        for edge in self.internal_edges(root):
            src = phi[edge.source]
            dst = phi[edge.target]
            result.append(
                (
                    edge,
                    tuple(
                        minus(plus(src[i], measure(edge.transitions[i].weight)), dst[i])
                        for i in range(self.order)
                    ),
                )
            )
        return result


def _group_ops(automaton: WeightedAutomaton):
    ctx = automaton.context
    return (lambda w: w), ctx.op, (lambda a, b: ctx.op(a, ctx.inverse(b)))


def _length_ops(automaton: WeightedAutomaton):
    ctx = automaton.context
    return ctx.norm, (lambda a, b: a + b), (lambda a, b: a - b)


def find_diff_cycle(
    power: PowerAutomaton,
    vector: StateVector,
    j: int,
    j2: int,
    max_len: int,
    separates: Optional[Callable[[Cycle], bool]] = None,
    graph: Optional[VectorGraph] = None,
) -> Optional[Cycle]:
    """
    在 vector 处找一个同步循环，使坐标 j 与 j2 的循环权重不同

    Args:
        power: 幂自动机
        vector: 循环经过的向量
        j, j2: 两个坐标
        max_len: 循环长度上限
        separates: 自定义的分离判定，默认比较两坐标的循环权重（交换群）
        graph: 复用的向量图

    Returns:
        循环的边列表，找不到时返回 None
    """
    if max_len <= 0:
        return None
    graph = graph or VectorGraph(power)
    if not graph.is_nontrivial(vector):
        return None
    automaton = power.automaton
    ctx = automaton.context

    if separates is None:

        def differs(cycle: Cycle) -> bool:
            first = ctx.product(e.transitions[j].weight for e in cycle)
            second = ctx.product(e.transitions[j2].weight for e in cycle)
            return first != second

        separates = differs
        offsets = graph.edge_offsets(vector, *_group_ops(automaton))
        edges = [edge for edge, delta in offsets if delta[j] != delta[j2]]
    else:
        edges = graph.internal_edges(vector)

    for edge in edges:
        for cycle in graph.edge_cycles(vector, edge):
            if cycle and len(cycle) <= max_len and separates(cycle):
                return cycle
    return None


@dataclass
class _Node:
    """分离树节点：members 为全局运行编号"""

    members: List[int]
    path: Cycle
    loop: Cycle = field(default_factory=list)


class TwinningSearch:
    """
    分离树搜索的公共部分

    子类定义配置的表示、坐标分类和分离循环的构造。
    """

    evidence_default = Evidence.WEIGHT

    def __init__(
        self,
        automaton: WeightedAutomaton,
        k: int,
        budget: SearchBudget,
        analyzer: Optional[BaseAnalyzer] = None,
    ):
        self.automaton = automaton
        self.ctx = automaton.context
        self.k = k
        self.budget = budget
        self.analyzer = analyzer or BaseAnalyzer()
        self.stats = SearchStats()
        self.truncated = False
        self._graphs: Dict[int, VectorGraph] = {}
        self._solved: Dict[Config, Optional[Tuple[Cycle, Config]]] = {}
        self._good: Dict[Config, Optional[List[List[int]]]] = {}
        self._seen: Dict[int, Set[Config]] = {}
        self._ticks = 0

    # ------------------------------------------------------------ 子类接口

    def initial_configs(self) -> List[Tuple[Config, Tuple[WeightedPair, ...]]]:
        raise NotImplementedError

    def vector(self, config: Config) -> StateVector:
        raise NotImplementedError

    def step(self, config: Config, edge: PowerEdge) -> Config:
        raise NotImplementedError

    def restrict(self, config: Config, coordinates: Sequence[int]) -> Config:
        raise NotImplementedError

    def classes(self, config: Config) -> Optional[List[List[int]]]:
        """配置处的不可分离类；分量平凡时返回 None"""
        raise NotImplementedError

    def diff_cycle(
        self, config: Config, pair: RunPair, prefixes: Sequence[GroupElement]
    ) -> Optional[Cycle]:
        raise NotImplementedError

    def evidence(self, pair: RunPair, loop: Cycle) -> Evidence:
        return self.evidence_default

    # ------------------------------------------------------------ 通用部分

    def graph(self, order: int) -> VectorGraph:
        graph = self._graphs.get(order)
        if graph is None:
            graph = VectorGraph(PowerAutomaton(self.automaton, order, self.budget.power_cap))
            self._graphs[order] = graph
            self.stats.orders.append(order)
        return graph

    def cycle_bound(self, order: int) -> int:
        """循环长度上限：用户上限或理论界 2·n^p"""
        theoretical = 2 * len(self.automaton.states) ** order
        if self.budget.cycle_len_cap is not None:
            return min(self.budget.cycle_len_cap, theoretical)
        return theoretical

    def _component_allowed(self, vector: StateVector) -> bool:
        """分量大小超出用户循环上限时跳过该分量，并记为截断"""
        cap = self.budget.cycle_len_cap
        if cap is None:
            return True
        size = len(self.graph(len(vector)).component(vector))
        if 2 * size > cap:
            self.truncated = True
            return False
        return True

    def _tick(self, config: Config, order: int) -> None:
        seen = self._seen.setdefault(order, set())
        if config in seen:
            return
        seen.add(config)
        self.stats.configurations += 1
        if len(seen) > self.budget.max_configurations:
            raise SearchAborted(
                f"阶数 {order} 的配置数超过上限 {self.budget.max_configurations}"
            )
        self._ticks += 1
        if self._ticks % 1024 == 0 and self.analyzer._is_cancelled():
            raise SearchAborted("搜索已取消")

    def solve(self, config: Config) -> Optional[Tuple[Cycle, Config]]:
        """从配置出发能否到达好的配置；返回路径和目标配置"""
        if config in self._solved:
            return self._solved[config]
        order = len(self.vector(config))
        graph = self.graph(order)
        parent: Dict[Config, Optional[Tuple[Config, PowerEdge]]] = {config: None}
        queue = deque([config])
        found: Optional[Config] = None
        while queue:
            current = queue.popleft()
            self._tick(current, order)
            if current != config and current in self._solved:
                if self._solved[current] is not None:
                    found = current
                    break
                continue
            if self.good(current) is not None:
                found = current
                break
            for edge in graph.power.successors(self.vector(current)):
                nxt = self.step(current, edge)
                if nxt not in parent:
                    parent[nxt] = (current, edge)
                    queue.append(nxt)

        if found is None:
            for visited in parent:
                self._solved[visited] = None
            return None

        path: Cycle = []
        cursor = found
        while parent[cursor] is not None:
            previous, edge = parent[cursor]  # type: ignore[misc]
            path.append(edge)
            cursor = previous
        path.reverse()
        target = found
        if found != config and found in self._solved:
            rest, target = self._solved[found]  # type: ignore[misc]
            path = path + list(rest)
        result = (path, target)
        self._solved[config] = result
        return result

    def good(self, config: Config) -> Optional[List[List[int]]]:
        if config in self._good:
            return self._good[config]
        self.stats.skeletons += 1
        result = None
        classes = self.classes(config)
        if classes is not None and len(classes) >= 2:
            if all(
                len(cls) == 1 or self.solve(self.restrict(config, cls)) is not None
                for cls in classes
            ):
                result = classes
        self._good[config] = result
        return result

    def separates(self, pair: RunPair, cycle: Cycle, prefixes: Sequence[GroupElement]) -> bool:
        """循环是否改变坐标 a、b 之间的延迟（prefixes 为循环前的累计权重）"""
        ctx = self.ctx
        a, b = pair
        beta_a = ctx.product(e.transitions[a].weight for e in cycle)
        beta_b = ctx.product(e.transitions[b].weight for e in cycle)
        before = ctx.delay(prefixes[a], prefixes[b])
        after = ctx.delay(ctx.op(prefixes[a], beta_a), ctx.op(prefixes[b], beta_b))
        return before != after

    def combine_loop(
        self, config: Config, cross: List[RunPair], prefixes: Sequence[GroupElement]
    ) -> Cycle:
        """合成同时分离全部跨类运行对的循环：逐对追加 c^n，n 取第一个可行值"""
        loop: Cycle = []
        handled: List[RunPair] = []
        for pair in cross:
            if not self.separates(pair, loop, prefixes):
                cycle = self.diff_cycle(config, pair, prefixes)
                if cycle is None:
                    raise SearchAborted(f"在 {self.vector(config)} 找不到分离坐标 {pair} 的循环")
                for n in range(1, len(cross) + 2):
                    candidate = loop + cycle * n
                    if all(self.separates(q, candidate, prefixes) for q in handled + [pair]):
                        loop = candidate
                        break
                else:
                    raise SearchAborted(f"无法合成分离 {pair} 的循环")
            handled.append(pair)
        return loop

    def run(self) -> Optional[BtpCounterexample]:
        """按固定顺序尝试所有初始配置，返回第一个反例"""
        for config, initial in self.initial_configs():
            if self.analyzer._is_cancelled():
                raise SearchAborted("搜索已取消")
            if self.solve(config) is not None:
                return self.assemble(config, initial)
        return None

    def assemble(self, config: Config, initial: Tuple[WeightedPair, ...]) -> BtpCounterexample:
        """自顶向下组装分离树并展开为 k+1 条运行"""
        ctx = self.ctx
        nodes: List[_Node] = []
        separations: List[Tuple[int, int, int, Evidence]] = []
        leaves: List[int] = []

        def build(cfg: Config, members: List[int], prefixes: List[GroupElement]) -> None:
            path, target = self._solved[cfg]  # type: ignore[misc]
            prefixes = [
                ctx.op(prefixes[t], ctx.product(e.transitions[t].weight for e in path))
                for t in range(len(members))
            ]
            classes = self._good[target]
            node = _Node(members, list(path))
            nodes.append(node)
            index = len(nodes)
            owner = {t: c for c, cls in enumerate(classes) for t in cls}  # type: ignore[union-attr]
            cross = [
                (a, b)
                for a, b in combinations(range(len(members)), 2)
                if owner[a] != owner[b]
            ]
            node.loop = self.combine_loop(target, cross, prefixes)
            for a, b in cross:
                evidence = self.evidence((a, b), node.loop)
                separations.append((members[a], members[b], index, evidence))
            for cls in classes:  # type: ignore[union-attr]
                if len(cls) == 1:
                    leaves.append(members[cls[0]])
                else:
                    build(
                        self.restrict(target, cls),
                        [members[t] for t in cls],
                        [prefixes[t] for t in cls],
                    )

        runs = len(initial)
        build(config, list(range(runs)), [gamma for _, gamma in initial])
        m = max(len(nodes), self.k)
        segments = [[RunSegment.empty() for _ in range(m)] for _ in range(runs)]
        loops = [[RunSegment.empty() for _ in range(m)] for _ in range(runs)]
        for i, node in enumerate(nodes):
            for t, run in enumerate(node.members):
                segments[run][i] = RunSegment(
                    path_word(node.path), tuple(e.transitions[t] for e in node.path)
                )
                loops[run][i] = RunSegment(
                    path_word(node.loop), tuple(e.transitions[t] for e in node.loop)
                )

        # 按叶子的深度优先顺序重新编号，使共享输入的运行相邻
        rank = {run: new for new, run in enumerate(leaves)}
        order = sorted(range(runs), key=rank.__getitem__)
        result = [
            Separation(min(rank[a], rank[b]), max(rank[a], rank[b]), loop, evidence)
            for a, b, loop, evidence in separations
        ]
        result.sort(key=lambda s: (s.j, s.j2))
        return BtpCounterexample(
            k=self.k,
            initial=[initial[run] for run in order],
            segments=[segments[run] for run in order],
            loops=[loops[run] for run in order],
            separations=result,
        )


class CommutativeSearch(TwinningSearch):
    """
    交换群上的搜索：延迟在循环上改变当且仅当两坐标的循环权重不同，
    配置只需状态向量
    """

    def __init__(self, automaton, k, budget, analyzer=None):
        super().__init__(automaton, k, budget, analyzer)
        self._class_cache: Dict[Tuple[int, int], Optional[List[List[int]]]] = {}

    def initial_configs(self) -> List[Tuple[Config, Tuple[WeightedPair, ...]]]:
        automaton = self.automaton
        least: Dict[str, GroupElement] = {}
        for state, gamma in automaton.sorted_initial():
            least.setdefault(state, gamma)
        states = automaton.initial_states()
        return [
            (combo, tuple((q, least[q]) for q in combo))
            for combo in combinations_with_replacement(states, self.k + 1)
        ]

    def vector(self, config: Config) -> StateVector:
        return config  # type: ignore[return-value]

    def step(self, config: Config, edge: PowerEdge) -> Config:
        return edge.target

    def restrict(self, config: Config, coordinates: Sequence[int]) -> Config:
        return tuple(config[t] for t in coordinates)  # type: ignore[index]

    def classes(self, config: Config) -> Optional[List[List[int]]]:
        vector = self.vector(config)
        graph = self.graph(len(vector))
        key = (len(vector), graph.component_id(vector))
        if key in self._class_cache:
            return self._class_cache[key]
        result = None
        if graph.is_nontrivial(vector) and self._component_allowed(vector):
            offsets = graph.edge_offsets(vector, *_group_ops(self.automaton))
            groups: Dict[Tuple, List[int]] = {}
            for t in range(len(vector)):
                signature = tuple(delta[t] for _, delta in offsets)
                groups.setdefault(signature, []).append(t)
            result = list(groups.values())
        self._class_cache[key] = result
        return result

    def diff_cycle(self, config, pair, prefixes):
        vector = self.vector(config)
        graph = self.graph(len(vector))
        return find_diff_cycle(
            graph.power,
            vector,
            pair[0],
            pair[1],
            self.cycle_bound(len(vector)),
            graph=graph,
        )


class TransducerSearch(TwinningSearch):
    """
    转换器（输出为自由群中正单词）上的搜索

    每对运行的延迟状态为精确延迟（范数不超过接近界 L）、FAR 或 MISMATCH，
    后两者是吸收态。一对运行可分离的依据：
    - 循环输出长度不同（长度势差不同）
    - 已不匹配且分量内有非空输出
    - 精确延迟在分量内沿某个循环回到原向量时改变，或中途出现不匹配
    """

    def __init__(self, automaton, k, budget, analyzer=None):
        super().__init__(automaton, k, budget, analyzer)
        n = len(automaton.states)
        self.theoretical_closeness = mw_constant(automaton) * n ** (k + 1)
        if budget.closeness_cap is not None:
            self.closeness = min(budget.closeness_cap, self.theoretical_closeness)
        else:
            self.closeness = self.theoretical_closeness
        self._pair_index: Dict[int, Dict[RunPair, int]] = {}
        self._length_cache: Dict[Tuple[int, int], List[Tuple]] = {}
        self._separable: Dict[Tuple, bool] = {}

    def pair_index(self, order: int) -> Dict[RunPair, int]:
        index = self._pair_index.get(order)
        if index is None:
            index = {pair: i for i, pair in enumerate(combinations(range(order), 2))}
            self._pair_index[order] = index
        return index

    @staticmethod
    def is_mismatch(delay: GroupElement) -> bool:
        signs = {sign for _, sign in delay.value}
        return len(signs) == 2

    def classify(self, delay: GroupElement):
        if self.is_mismatch(delay):
            return MISMATCH
        if self.ctx.norm(delay) > self.closeness:
            if self.closeness < self.theoretical_closeness:
                self.truncated = True
            return FAR
        return delay

    def initial_configs(self) -> List[Tuple[Config, Tuple[WeightedPair, ...]]]:
        pairs = self.automaton.sorted_initial()
        result = []
        for combo in combinations_with_replacement(pairs, self.k + 1):
            vector = tuple(q for q, _ in combo)
            statuses = tuple(
                self.classify(self.ctx.delay(combo[a][1], combo[b][1]))
                for a, b in self.pair_index(len(combo))
            )
            result.append(((vector, statuses), combo))
        return result

    def vector(self, config: Config) -> StateVector:
        return config[0]  # type: ignore[index]

    def step(self, config: Config, edge: PowerEdge) -> Config:
        ctx = self.ctx
        vector, statuses = config  # type: ignore[misc]
        weights = edge.weights
        updated = []
        for (a, b), status in zip(self.pair_index(len(vector)), statuses):
            if status == FAR or status == MISMATCH:
                updated.append(status)
            else:
                delay = ctx.op(ctx.op(ctx.inverse(weights[a]), status), weights[b])
                updated.append(self.classify(delay))
        return (edge.target, tuple(updated))

    def restrict(self, config: Config, coordinates: Sequence[int]) -> Config:
        vector, statuses = config  # type: ignore[misc]
        index = self.pair_index(len(vector))
        sub = tuple(vector[t] for t in coordinates)
        return (
            sub,
            tuple(
                statuses[index[(coordinates[x], coordinates[y])]]
                for x, y in combinations(range(len(coordinates)), 2)
            ),
        )

    def length_offsets(self, vector: StateVector) -> List[Tuple]:
        graph = self.graph(len(vector))
        key = (len(vector), graph.component_id(vector))
        cached = self._length_cache.get(key)
        if cached is None:
            offsets = graph.edge_offsets(vector, *_length_ops(self.automaton))
            cached = [delta for _, delta in offsets]
            self._length_cache[key] = cached
        return cached

    def _delay_walk(
        self, vector: StateVector, a: int, b: int, delay: GroupElement
    ) -> Optional[Cycle]:
        """
        在分量内跟踪 (向量, 精确延迟)，找回到 vector 时延迟改变或出现不匹配的路径

        只在两坐标长度势差处处相同时调用，此时延迟长度有界，状态空间有限。
        """
        ctx = self.ctx
        graph = self.graph(len(vector))
        edges = graph.internal_edges(vector)
        outgoing: Dict[StateVector, List[PowerEdge]] = {}
        for edge in edges:
            outgoing.setdefault(edge.source, []).append(edge)
        start = (vector, delay)
        parent: Dict[Tuple, Optional[Tuple[Tuple, PowerEdge]]] = {start: None}
        queue = deque([start])
        limit = self.budget.max_configurations
        while queue:
            node = queue.popleft()
            current, d = node
            for edge in outgoing.get(current, ()):
                nxt_delay = ctx.op(
                    ctx.op(ctx.inverse(edge.transitions[a].weight), d), edge.transitions[b].weight
                )
                target = edge.target
                mismatch = self.is_mismatch(nxt_delay)
                if mismatch or (target == vector and nxt_delay != delay):
                    path = [edge]
                    cursor = node
                    while parent[cursor] is not None:
                        previous, back_edge = parent[cursor]  # type: ignore[misc]
                        path.append(back_edge)
                        cursor = previous
                    path.reverse()
                    if mismatch:
                        path += graph.path_to(vector, target)
                    return path
                nxt = (target, nxt_delay)
                if nxt not in parent:
                    if len(parent) > limit:
                        raise SearchAborted(f"延迟跟踪的状态数超过上限 {limit}")
                    parent[nxt] = (node, edge)
                    queue.append(nxt)
        return None

    def pair_separable(self, config: Config, a: int, b: int, lengths: List[Tuple]) -> bool:
        vector, statuses = config  # type: ignore[misc]
        if any(delta[a] != delta[b] for delta in lengths):
            return True
        status = statuses[self.pair_index(len(vector))[(a, b)]]
        if status == FAR:
            return False
        graph = self.graph(len(vector))
        if status == MISMATCH:
            return any(
                not self.ctx.is_identity(edge.transitions[a].weight)
                or not self.ctx.is_identity(edge.transitions[b].weight)
                for edge in graph.internal_edges(vector)
            )
        key = (vector, a, b, status)
        cached = self._separable.get(key)
        if cached is None:
            cached = self._delay_walk(vector, a, b, status) is not None
            self._separable[key] = cached
        return cached

    def classes(self, config: Config) -> Optional[List[List[int]]]:
        vector = self.vector(config)
        graph = self.graph(len(vector))
        if not graph.is_nontrivial(vector) or not self._component_allowed(vector):
            return None
        lengths = self.length_offsets(vector)
        parent = list(range(len(vector)))

        def find(t: int) -> int:
            while parent[t] != t:
                parent[t] = parent[parent[t]]
                t = parent[t]
            return t

        for a, b in combinations(range(len(vector)), 2):
            if find(a) != find(b) and not self.pair_separable(config, a, b, lengths):
                parent[find(b)] = find(a)
        groups: Dict[int, List[int]] = {}
        for t in range(len(vector)):
            groups.setdefault(find(t), []).append(t)
        return list(groups.values())

    def diff_cycle(self, config, pair, prefixes):
        vector = self.vector(config)
        graph = self.graph(len(vector))
        bound = self.cycle_bound(len(vector))
        a, b = pair

        def separates(cycle: Cycle) -> bool:
            return self.separates(pair, cycle, prefixes)

        cycle = find_diff_cycle(
            graph.power, vector, a, b, bound, separates=separates, graph=graph
        )
        if cycle is not None:
            return cycle
        cycle = self._delay_walk(vector, a, b, self.ctx.delay(prefixes[a], prefixes[b]))
        if cycle is not None and separates(cycle):
            return cycle
        return None

    def evidence(self, pair: RunPair, loop: Cycle) -> Evidence:
        a, b = pair
        first = sum(self.ctx.norm(e.transitions[a].weight) for e in loop)
        second = sum(self.ctx.norm(e.transitions[b].weight) for e in loop)
        return Evidence.LENGTH if first != second else Evidence.MISMATCH
