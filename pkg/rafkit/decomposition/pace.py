"""
PACE-style exchange of graphs and tree decompositions.

Vertices are numbered 1..n in sorted name order; ``c vertex <id> <name>`` comment lines record
the names. Bags are numbered in pre-order, so bag 1 is the root when read back.
"""

import logging
from collections import deque
from typing import Dict, List, Optional

import networkx as nx

from ..errors import ParseError
from .td import TreeDecomposition

logger = logging.getLogger(__name__)


def _numbering(names) -> Dict[str, int]:
    return {name: i for i, name in enumerate(sorted(names), start=1)}


def _name_comments(numbers: Dict[str, int]) -> List[str]:
    return [f"c vertex {i} {name}" for name, i in sorted(numbers.items(), key=lambda kv: kv[1])]


def write_pace_graph(graph: nx.Graph) -> str:
    numbers = _numbering(graph.nodes)
    edges = sorted(
        tuple(sorted((numbers[u], numbers[v]))) for u, v in graph.edges if u != v
    )
    lines = _name_comments(numbers)
    lines.append(f"p tw {len(numbers)} {len(edges)}")
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def write_td(td: TreeDecomposition, graph: Optional[nx.Graph] = None) -> str:
    """``s td <bags> <width+1> <vertices>``, ``b`` lines, then the tree edges."""
    names = set(graph.nodes) if graph is not None else set(td.vertices())
    numbers = _numbering(names)
    order = _preorder(td)
    ids = {node: i for i, node in enumerate(order, start=1)}
    lines = _name_comments(numbers)
    lines.append(f"s td {len(order)} {td.width + 1} {len(numbers)}")
    for node in order:
        members = sorted(numbers[v] for v in td.bags[node])
        lines.append(" ".join(["b", str(ids[node])] + [str(m) for m in members]))
    for node in order:
        for child in td.children.get(node, ()):
            lines.append(f"{ids[node]} {ids[child]}")
    return "\n".join(lines) + "\n"


def _preorder(td: TreeDecomposition) -> List[int]:
    order = []
    stack = [td.root]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(reversed(td.children.get(node, ())))
    return order


def read_td(text: str, graph: Optional[nx.Graph] = None, source: str = "<td>") -> TreeDecomposition:
    """Parse a PACE TD, rooted at bag 1.

    Vertex names come from ``c vertex`` lines, else from the sorted vertices of ``graph``,
    else the numbers themselves are used as names.
    """
    names: Dict[int, str] = {}
    header = None
    bags: Dict[int, frozenset] = {}
    raw_bags: Dict[int, List[int]] = {}
    adjacency: Dict[int, List[int]] = {}
    edge_count = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "c":
            if len(parts) == 4 and parts[1] == "vertex" and parts[2].isdigit():
                names[int(parts[2])] = parts[3]
            continue
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td" or not all(p.isdigit() for p in parts[2:]):
                raise ParseError("header must be 's td <bags> <width+1> <vertices>'", lineno, 1, source)
            header = [int(p) for p in parts[2:]]
            continue
        fields = parts[1:] if parts[0] == "b" else parts
        if not all(p.isdigit() for p in fields):
            raise ParseError(f"unexpected line '{line.strip()}'", lineno, 1, source)
        numbers = [int(p) for p in fields]
        if header is None:
            raise ParseError("content before the 's td' header", lineno, 1, source)
        if parts[0] == "b":
            if not numbers:
                raise ParseError("bag line without id", lineno, 1, source)
            raw_bags[numbers[0]] = numbers[1:]
        else:
            if len(numbers) != 2:
                raise ParseError("tree edge needs two bag ids", lineno, 1, source)
            u, v = numbers
            adjacency.setdefault(u, []).append(v)
            adjacency.setdefault(v, []).append(u)
            edge_count += 1
    if header is None:
        raise ParseError("missing 's td' header", 1, 1, source)
    count, _, vertex_count = header
    if len(raw_bags) != count:
        raise ParseError(f"header announces {count} bags, found {len(raw_bags)}", 1, 1, source)

    if not names and graph is not None:
        names = {i: v for v, i in _numbering(graph.nodes).items()}
    for node, members in raw_bags.items():
        for m in members:
            if m < 1 or m > vertex_count:
                raise ParseError(f"vertex {m} out of range in bag {node}", 1, 1, source)
        bags[node] = frozenset(names.get(m, str(m)) for m in members)

    if not bags:
        raise ParseError("decomposition without bags", 1, 1, source)
    root = 1 if 1 in bags else min(bags)
    children: Dict[int, List[int]] = {n: [] for n in bags}
    seen = {root}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for other in sorted(adjacency.get(node, ())):
            if other not in seen:
                seen.add(other)
                children[node].append(other)
                queue.append(other)
    if seen != set(bags) or edge_count != len(bags) - 1:
        raise ParseError("tree edges do not form a tree over the bags", 1, 1, source)
    logger.debug("Read TD with %d bags", len(bags))
    return TreeDecomposition(bags, {n: tuple(c) for n, c in children.items()}, root)
