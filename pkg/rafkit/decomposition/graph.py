"""
Primal graphs.

- AF: attacks with their direction dropped
- RAF: the AF graph, each condition unit as a clique, and every argument joined to the
  variables of its own condition
- QBF: variables adjacent iff they share a clause or term

Self-loops are never stored; isolated vertices are kept so decompositions cover them.
"""

import itertools
import logging
from typing import Iterable, Union

import networkx as nx

from ..core.classify import condition_units, unit_variables
from ..core.model import AF, RAF
from ..qbf.model import QbfInstance

logger = logging.getLogger(__name__)


def _clique(graph: nx.Graph, members: Iterable[str]) -> None:
    for u, v in itertools.combinations(sorted(set(members)), 2):
        graph.add_edge(u, v)


def af_primal_graph(af: AF) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(af.arguments)
    graph.add_edges_from((a, b) for a, b in af.sorted_attacks() if a != b)
    return graph


def raf_primal_graph(raf: RAF) -> nx.Graph:
    graph = af_primal_graph(raf.af)
    graph.add_nodes_from(sorted(raf.rc_variables() - set(raf.arguments)))
    for a in raf.arguments:
        for unit in condition_units(raf, a):
            names = unit_variables(unit)
            _clique(graph, names)
            graph.add_edges_from((a, v) for v in sorted(names) if v != a)
    return graph


def qbf_primal_graph(qbf: QbfInstance) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(qbf.variables())
    for group in qbf.cnf + qbf.dnf:
        _clique(graph, (l.atom for l in group))
    return graph


def primal_graph(obj: Union[AF, RAF, QbfInstance]) -> nx.Graph:
    if isinstance(obj, RAF):
        graph = raf_primal_graph(obj)
    elif isinstance(obj, AF):
        graph = af_primal_graph(obj)
    elif isinstance(obj, QbfInstance):
        graph = qbf_primal_graph(obj)
    else:
        raise TypeError(f"no primal graph for {type(obj).__name__}")
    logger.debug("Primal graph: %d vertices, %d edges", graph.number_of_nodes(), graph.number_of_edges())
    return graph
