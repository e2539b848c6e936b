"""
CPR graphs: labelled multigraphs on {1..m} whose label-i edges form the
matching of the involution rho_i. Fixed points of rho_i have no label-i edge.

Text format::

    kind: cpr
    label: A11-rank6-1
    nodes: 11
    rank: 6
    edge: 1 2 0
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

import networkx as nx

from errors import RepFileError
from permgroup import Permutation
from sggi import SggiRep

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]


def _check_edge(edge: Edge, nodes: int, rank: int, matched: Dict[Tuple[int, int], int],
                seen: Set[Edge]) -> Edge:
    """Normalize one edge to u < v and check it against the graph invariants."""
    u, v, label = edge
    if u == v:
        raise ValueError(f"loop at node {u}")
    u, v = min(u, v), max(u, v)
    for node in (u, v):
        if not 1 <= node <= nodes:
            raise ValueError(f"node {node} out of range 1..{nodes}")
    if not 0 <= label < rank:
        raise ValueError(f"label {label} out of range 0..{rank - 1}")
    if (u, v, label) in seen:
        raise ValueError(f"duplicate edge {u} {v} with label {label}")
    for node in (u, v):
        if (node, label) in matched:
            raise ValueError(f"matching violation at node {node}, label {label}")
    for node in (u, v):
        matched[(node, label)] = u + v - node
    seen.add((u, v, label))
    return u, v, label


@dataclass(frozen=True)
class CprGraph:
    nodes: int
    rank: int
    edges: Tuple[Edge, ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.nodes < 1:
            raise ValueError(f"a CPR graph needs at least one node, got {self.nodes}")
        if self.rank < 0:
            raise ValueError(f"rank must be non-negative, got {self.rank}")
        matched, seen = {}, set()
        edges = [_check_edge(tuple(edge), self.nodes, self.rank, matched, seen) for edge in self.edges]
        object.__setattr__(self, "edges", tuple(sorted(edges, key=lambda e: (e[2], e[0], e[1]))))

    def edges_with_label(self, label: int) -> List[Tuple[int, int]]:
        return [(u, v) for u, v, edge_label in self.edges if edge_label == label]


def cpr_parse(text: str) -> CprGraph:
    """
    Parse the CPR text format.

    Raises:
        RepFileError: With the 1-based line number of the offending line
    """
    header: Dict[str, str] = {}
    edges: List[Edge] = []
    matched: Dict[Tuple[int, int], int] = {}
    seen: Set[Edge] = set()

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key, value = key.strip().lower(), value.strip()
        if not sep or not key:
            raise RepFileError(f"malformed line {raw.strip()!r}", number)

        if key == "edge":
            if "nodes" not in header or "rank" not in header:
                raise RepFileError("edge before the nodes and rank headers", number)
            fields = value.split()
            try:
                edge = tuple(int(token) for token in fields)
            except ValueError:
                raise RepFileError(f"malformed edge {value!r}, expected 'u v label'", number)
            if len(edge) != 3:
                raise RepFileError(f"malformed edge {value!r}, expected 'u v label'", number)
            try:
                edges.append(_check_edge(edge, int(header["nodes"]), int(header["rank"]), matched, seen))
            except ValueError as exc:
                raise RepFileError(str(exc), number)
        elif key in ("kind", "label", "nodes", "rank"):
            if key in header:
                raise RepFileError(f"duplicate '{key}' header", number)
            if key == "kind" and value != "cpr":
                raise RepFileError(f"expected kind 'cpr', got '{value}'", number)
            if key in ("nodes", "rank"):
                try:
                    if int(value) < (1 if key == "nodes" else 0):
                        raise ValueError
                except ValueError:
                    raise RepFileError(f"'{key}' must be a positive integer, got {value!r}", number)
            header[key] = value
        else:
            raise RepFileError(f"unknown key '{key}'", number)

    for required in ("nodes", "rank"):
        if required not in header:
            raise RepFileError(f"missing '{required}' header")
    return CprGraph(int(header["nodes"]), int(header["rank"]), tuple(edges), label=header.get("label"))


def cpr_emit(graph: CprGraph) -> str:
    """Canonical text: headers, then edges sorted by (label, u, v)."""
    lines = ["kind: cpr"]
    if graph.label:
        lines.append(f"label: {graph.label}")
    lines.append(f"nodes: {graph.nodes}")
    lines.append(f"rank: {graph.rank}")
    lines.extend(f"edge: {u} {v} {label}" for u, v, label in graph.edges)
    return "\n".join(lines) + "\n"


def cpr_to_rep(graph: CprGraph) -> SggiRep:
    """rho_i is the product of the transpositions (u v) over the label-i edges."""
    generators = tuple(
        Permutation.from_cycles(graph.edges_with_label(label), graph.nodes)
        for label in range(graph.rank)
    )
    return SggiRep("permutation", generators, label=graph.label)


def rep_to_cpr(rep: SggiRep) -> CprGraph:
    """
    Encode a permutation representation whose generators are involutions.

    Raises:
        ValueError: For a matrix representation or a non-involution generator
    """
    if rep.engine != "permutation":
        raise ValueError("only permutation representations have CPR graphs")
    if not rep.generators:
        raise ValueError("a rank 0 representation has no domain to draw")
    edges = []
    for label, gen in enumerate(rep.generators):
        if not gen.is_involution:
            raise ValueError(f"rho_{label} = {gen} is not an involution")
        edges.extend((cycle[0], cycle[1], label) for cycle in gen.cycles())
    return CprGraph(rep.degree, rep.rank, tuple(edges), label=rep.label)


def connectivity(graph: CprGraph, labels: Optional[Iterable[int]] = None) -> List[Tuple[int, ...]]:
    """
    Connected components of the subgraph keeping only the selected labels.

    Components are sorted tuples ordered by their smallest node; the
    restricted representation is transitive iff there is exactly one.

    Raises:
        ValueError: If a label is outside 0..rank-1
    """
    selected = set(range(graph.rank)) if labels is None else set(labels)
    for label in selected:
        if not 0 <= label < graph.rank:
            raise ValueError(f"label {label} out of range 0..{graph.rank - 1}")

    subgraph = nx.Graph()
    subgraph.add_nodes_from(range(1, graph.nodes + 1))
    subgraph.add_edges_from((u, v) for u, v, label in graph.edges if label in selected)
    components = sorted(tuple(sorted(component)) for component in nx.connected_components(subgraph))
    logger.debug("%s: %d components over labels %s", graph.label, len(components), sorted(selected))
    return components
