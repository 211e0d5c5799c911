"""
Tree decompositions: heuristic construction, validation, normalization and bag projections.

Key Features:
- Min-fill / min-degree elimination orderings, ties broken by vertex name
- Validation naming the violated condition with a witness
- Normalization to at most two children per node, with copy nodes splitting large C_t
- last(v), the topmost node whose bag holds v
"""

import itertools
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from ..core.classify import ConditionUnit, condition_units, unit_variables
from ..core.formula import variables
from ..core.model import RAF, Attack
from ..errors import DecompositionError, ValidationError

logger = logging.getLogger(__name__)


class Heuristic(Enum):
    MIN_FILL = "min-fill"
    MIN_DEGREE = "min-degree"


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree of bags; ``children`` lists every node, leaves map to ()."""

    bags: Dict[int, FrozenSet[str]]
    children: Dict[int, Tuple[int, ...]]
    root: int
    condition_slots: Optional[Dict[int, Tuple[ConditionUnit, ...]]] = None

    @property
    def width(self) -> int:
        return max(max((len(b) for b in self.bags.values()), default=1) - 1, 0)

    def nodes(self) -> Tuple[int, ...]:
        """Post-order: children before their parent, root last."""
        order: List[int] = []
        stack = [(self.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                order.append(node)
                continue
            stack.append((node, True))
            for child in reversed(self.children.get(node, ())):
                stack.append((child, False))
        return tuple(order)

    def parents(self) -> Dict[int, int]:
        return {c: node for node, kids in self.children.items() for c in kids}

    def vertices(self) -> FrozenSet[str]:
        found: Set[str] = set()
        for bag in self.bags.values():
            found |= bag
        return frozenset(found)

    def last(self) -> Dict[str, int]:
        """last(v) for every vertex: the unique node holding v whose parent does not."""
        parent = self.parents()
        result: Dict[str, int] = {}
        for node in self.nodes():
            up = parent.get(node)
            for v in self.bags[node]:
                if up is None or v not in self.bags[up]:
                    result[v] = node
        return result

    def edges(self) -> List[Tuple[int, int]]:
        return [(node, child) for node in self.nodes() for child in self.children.get(node, ())]


# construction


def elimination_order(graph: nx.Graph, heuristic: Heuristic = Heuristic.MIN_FILL) -> List[str]:
    work = {v: set(graph.neighbors(v)) - {v} for v in graph.nodes}

    def score(v: str) -> int:
        neighbours = work[v]
        if heuristic is Heuristic.MIN_DEGREE:
            return len(neighbours)
        return sum(1 for x, y in itertools.combinations(sorted(neighbours), 2) if y not in work[x])

    order = []
    while work:
        v = min(work, key=lambda u: (score(u), u))
        neighbours = work.pop(v)
        for x in neighbours:
            work[x].discard(v)
            work[x] |= neighbours - {x}
        order.append(v)
    return order


def heuristic_td(graph: nx.Graph, heuristic: Heuristic = Heuristic.MIN_FILL) -> TreeDecomposition:
    """TD from an elimination ordering, rooted at the bag of the last eliminated vertex.

    Bags contained in their parent's bag are merged into it afterwards.
    """
    heuristic = Heuristic(heuristic)
    order = elimination_order(graph, heuristic)
    if not order:
        return TreeDecomposition({0: frozenset()}, {0: ()}, 0)

    position = {v: i for i, v in enumerate(order)}
    fill = nx.Graph(graph)
    fill.remove_edges_from(nx.selfloop_edges(fill))
    bags: Dict[int, FrozenSet[str]] = {}
    parent: Dict[int, int] = {}
    for i, v in enumerate(order):
        later = {u for u in fill.neighbors(v) if position[u] > i}
        bags[i] = frozenset(later | {v})
        for x, y in itertools.combinations(sorted(later), 2):
            fill.add_edge(x, y)
        if later:
            parent[i] = min(position[u] for u in later)
        elif i != len(order) - 1:
            parent[i] = len(order) - 1

    root = len(order) - 1
    # merge bags subsumed by their parent, children first
    for i in range(len(order) - 1):
        p = parent[i]
        if bags[i] <= bags[p]:
            for child, up in list(parent.items()):
                if up == i:
                    parent[child] = p
            del parent[i]
            del bags[i]

    children: Dict[int, List[int]] = {node: [] for node in bags}
    for child, up in sorted(parent.items()):
        children[up].append(child)
    td = TreeDecomposition(bags, {n: tuple(c) for n, c in children.items()}, root)
    logger.debug("%s TD: %d nodes, width %d", heuristic.value, len(bags), td.width)
    return td


# validation


def _check_tree(td: TreeDecomposition) -> None:
    if td.root not in td.bags:
        raise DecompositionError("root is not a node", td.root)
    seen = set()
    stack = [td.root]
    while stack:
        node = stack.pop()
        if node in seen:
            raise DecompositionError("tree has a cycle or shared child", node)
        if node not in td.bags:
            raise DecompositionError("child without a bag", node)
        seen.add(node)
        stack.extend(td.children.get(node, ()))
    unreachable = sorted(set(td.bags) - seen)
    if unreachable:
        raise DecompositionError("node not reachable from the root", unreachable[0])


def validate_td(graph: nx.Graph, td: TreeDecomposition) -> int:
    """Check the TD conditions against ``graph`` and return the width.

    Raises:
        DecompositionError: naming the first violated condition and a witness.
    """
    _check_tree(td)
    vertices = set(graph.nodes)
    for node in sorted(td.bags):
        stray = sorted(td.bags[node] - vertices)
        if stray:
            raise DecompositionError("bag holds a vertex outside the graph", (node, stray[0]))
    covered = td.vertices()
    for v in sorted(vertices):
        if v not in covered:
            raise DecompositionError("vertex not covered", v)
    bag_list = list(td.bags.values())
    for u, v in sorted(tuple(sorted(e)) for e in graph.edges if e[0] != e[1]):
        if not any(u in bag and v in bag for bag in bag_list):
            raise DecompositionError("edge not covered", (u, v))
    parent = td.parents()
    for v in sorted(vertices):
        tops = [n for n in td.bags if v in td.bags[n] and (n not in parent or v not in td.bags[parent[n]])]
        if len(tops) != 1:
            raise DecompositionError("connectivity violated", (v, tuple(sorted(tops))))
    return td.width


# normalization


def _host_arguments(raf: RAF, bag: FrozenSet[str], unit: ConditionUnit) -> List[str]:
    return [a for a in raf.arguments if a in bag and unit in condition_units(raf, a)]


def bag_conditions(raf: RAF, bag: FrozenSet[str]) -> Tuple[ConditionUnit, ...]:
    """C_t computed from the bag: units of bag arguments whose variables lie in the bag."""
    found: Dict[ConditionUnit, None] = {}
    for a in raf.arguments:
        if a not in bag:
            continue
        for unit in condition_units(raf, a):
            if unit_variables(unit) <= bag:
                found.setdefault(unit, None)
    return tuple(found)


def normalize_td(td: TreeDecomposition, raf: Optional[RAF] = None) -> TreeDecomposition:
    """At most two children per node; with ``raf``, also at most width+1 conditions per node.

    Both steps add copy nodes carrying the bag of the node they copy, so the width is
    unchanged. The condition step records the per-node share in ``condition_slots``.
    """
    bags = dict(td.bags)
    children = {n: list(td.children.get(n, ())) for n in td.bags}
    next_id = max(bags) + 1

    for node in list(td.nodes()):
        current = node
        while len(children[current]) > 2:
            copy = next_id
            next_id += 1
            bags[copy] = bags[current]
            children[copy] = children[current][1:]
            children[current] = [children[current][0], copy]
            current = copy

    slots: Optional[Dict[int, Tuple[ConditionUnit, ...]]] = None
    root = td.root
    if raf is not None:
        limit = td.width + 1
        slots = {}
        parent = {c: n for n, kids in children.items() for c in kids}
        for node in list(bags):
            units = bag_conditions(raf, bags[node])
            chunks = [units[i:i + limit] for i in range(0, len(units), limit)] or [()]
            slots[node] = chunks[0]
            below = children[node]
            top = node
            # copies sit above the node: each has exactly one child
            for chunk in chunks[1:]:
                copy = next_id
                next_id += 1
                bags[copy] = bags[node]
                children[copy] = [top]
                slots[copy] = chunk
                up = parent.get(top)
                if up is None:
                    root = copy
                else:
                    children[up] = [copy if c == top else c for c in children[up]]
                parent[top] = copy
                if up is not None:
                    parent[copy] = up
                top = copy
            children[node] = below
        split = sum(1 for n in slots if n not in td.bags)
        if split:
            logger.debug("Split conditions over %d copy nodes", split)

    result = TreeDecomposition(bags, {n: tuple(c) for n, c in children.items()}, root, slots)
    if result.width != td.width:
        raise DecompositionError("normalization changed the width", (td.width, result.width))
    return result


def is_normalized(td: TreeDecomposition) -> bool:
    return all(len(kids) <= 2 for kids in td.children.values())


# projections


@dataclass(frozen=True)
class BagProjection:
    arguments: Tuple[str, ...]
    attacks: Tuple[Attack, ...]
    conditions: Tuple[ConditionUnit, ...]


def node_conditions(raf: RAF, td: TreeDecomposition, node: int) -> Tuple[ConditionUnit, ...]:
    if td.condition_slots is not None and node in td.condition_slots:
        return td.condition_slots[node]
    return bag_conditions(raf, td.bags[node])


def bag_projection(raf: RAF, td: TreeDecomposition, node: int) -> BagProjection:
    """A_t, R_t and C_t of a node."""
    if node not in td.bags:
        raise ValidationError(f"unknown node {node}", ("td", str(node)))
    bag = td.bags[node]
    return BagProjection(
        tuple(a for a in raf.arguments if a in bag),
        tuple((a, b) for a, b in raf.af.sorted_attacks() if a in bag and b in bag),
        node_conditions(raf, td, node),
    )


def hosts(raf: RAF, td: TreeDecomposition, node: int, unit: ConditionUnit) -> List[str]:
    """Arguments a of A_t with the unit in C(a)."""
    return _host_arguments(raf, td.bags[node], unit)


def rebag(td: TreeDecomposition, bags: Dict[int, Iterable[str]]) -> TreeDecomposition:
    """Same tree, new bags."""
    return replace(td, bags={n: frozenset(b) for n, b in bags.items()}, condition_slots=None)


def clausified_td(td: TreeDecomposition, raf: RAF, clausified: RAF) -> TreeDecomposition:
    """Carry a TD of primal(raf) over to primal(clausify_raf(raf)).

    For every rewritten formula of C(a), the formula's variables, ``a`` and its Tseitin atoms
    join each bag of the smallest subtree meeting all of them, so every new clause fits a bag.
    """
    tree = nx.Graph(td.edges())
    tree.add_nodes_from(td.bags)
    bags = {n: set(b) for n, b in td.bags.items()}
    rewritten = 0
    for a in raf.arguments:
        for before, after in zip(raf.condition(a).body, clausified.condition(a).body):
            if before == after:
                continue
            kept = variables(before) | {a}
            group = kept | variables(after)
            anchors = [min(n for n in bags if v in bags[n]) for v in sorted(kept)]
            span = set(anchors)
            for node in anchors[1:]:
                span.update(nx.shortest_path(tree, anchors[0], node))
            for node in span:
                bags[node] |= group
            rewritten += 1
    logger.debug("Lifted %d clausified formulas into the decomposition", rewritten)
    return rebag(td, bags)
