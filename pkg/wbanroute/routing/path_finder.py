import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Collection, Dict, List, Optional, Set, Tuple, Union

import networkx as nx

from wbanroute.utility import COST_DECIMALS, NodeRole
from wbanroute.utility.custom_types import NodeId
from .cost import CostNorms, CostWeights, link_cost


class NoRoute(Exception):
    """Raised when no sink is reachable from the source"""

    pass


@dataclass
class Route:
    """An ordered node sequence from a source to a sink.

    Args:
        hops:
            the nodes, source first, sink last
        cost:
            total path cost at selection time
        rci:
            congestion index, packets per second over the last window
        demoted_until:
            end of the current demotion, if any
    """

    hops: List[NodeId]
    cost: float
    rci: float = 0.0
    demoted_until: Optional[float] = None
    rci_history: List[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(set(self.hops)) != len(self.hops):
            raise ValueError(f"Route {self.hops} is not a simple path")
        if self.cost < 0:
            raise ValueError("A route cost cannot be negative")

    @property
    def src(self) -> NodeId:
        return self.hops[0]

    @property
    def sink(self) -> NodeId:
        return self.hops[-1]

    @property
    def links(self) -> List[Tuple[NodeId, NodeId]]:
        return list(zip(self.hops, self.hops[1:]))

    def key(self) -> Tuple[NodeId, ...]:
        return tuple(self.hops)

    def is_demoted(self, now: float) -> bool:
        return self.demoted_until is not None and now < self.demoted_until


EdgeCost = Callable[[NodeId, NodeId, Dict], float]


def _edge_cost_function(
    weight: Union[str, EdgeCost], w: Optional[CostWeights], norms: Optional[CostNorms]
) -> EdgeCost:
    if callable(weight):
        return weight
    attribute: str = weight
    if w is not None and norms is not None:

        def cost(u: NodeId, v: NodeId, data: Dict) -> float:
            return link_cost(u, data["entry"], w, norms)

        return cost

    def stored(u: NodeId, v: NodeId, data: Dict) -> float:
        return data.get(attribute, math.inf)

    return stored


def default_sinks(graph: nx.Graph) -> Set[NodeId]:
    return {n for n, role in graph.nodes(data="role") if role is NodeRole.SINK}


def find_route(
    src: NodeId,
    graph: nx.Graph,
    w: Optional[CostWeights] = None,
    excluded: Collection[NodeId] = (),
    norms: Optional[CostNorms] = None,
    sinks: Optional[Collection[NodeId]] = None,
    weight: Union[str, EdgeCost] = "cost",
    penalised: Collection[Tuple[NodeId, NodeId]] = (),
    factor: float = 1.0,
) -> Route:
    """Minimum-cost path from ``src`` to the cheapest reachable sink.

    Edge costs come from the edge ``entry`` through
    :func:`link_cost` when both weights and norms are given, from the
    ``weight`` otherwise. Sinks terminate paths and never
    relay. Ties are broken by fewer hops, then by the lowest largest
    node id on the path.

    Args:
        src:
            the source node
        graph:
            directed or undirected cost-annotated graph
        w:
            cost weights, see above
        excluded:
            nodes that may not appear on the path (the source is
            never excluded)
        norms:
            cost normalisation, see above
        sinks:
            the destinations; by default the nodes whose ``role``
            attribute is ``NodeRole.SINK``
        weight:
            edge attribute holding a precomputed cost, or a function
            of ``(u, v, data)`` returning it
        penalised:
            links whose cost is multiplied by ``factor``, used to look
            for a second route without copying the graph
        factor:
            the penalty multiplier, at least 1

    Raises:
        NoRoute:
            if every sink is unreachable
    """
    if src not in graph:
        raise NoRoute(f"Node {src} is not part of the graph")
    targets = set(default_sinks(graph) if sinks is None else sinks)
    if src in targets:
        raise ValueError(f"Node {src} is a sink, it does not originate routes")
    blocked = set(excluded) - {src}
    if factor < 1:
        raise ValueError(f"A link penalty cannot make a link cheaper, got {factor}")
    edge_cost = _edge_cost_function(weight, w, norms)
    penalties = set(penalised)
    if not graph.is_directed():
        penalties |= {(v, u) for u, v in penalties}
    neighbors = graph.successors if graph.is_directed() else graph.neighbors

    # label: (rounded cost, hops, largest id), compared lexicographically
    labels: Dict[NodeId, Tuple[float, int, int]] = {src: (0.0, 0, -1)}
    costs: Dict[NodeId, float] = {src: 0.0}
    parents: Dict[NodeId, NodeId] = {}
    settled: Set[NodeId] = set()
    heap: List[Tuple[float, int, int, NodeId]] = [(0.0, 0, -1, src)]
    while heap:
        rounded, hops, largest, node = heapq.heappop(heap)
        if node in settled or (rounded, hops, largest) != labels[node]:
            continue
        settled.add(node)
        if node in targets:
            path = [node]
            while path[-1] != src:
                path.append(parents[path[-1]])
            path.reverse()
            return Route(path, costs[node])
        for nxt in neighbors(node):
            if nxt in settled or nxt in blocked:
                continue
            step = edge_cost(node, nxt, graph[node][nxt])
            if (node, nxt) in penalties:
                step *= factor
            if math.isinf(step):
                continue
            if step < 0:
                raise ValueError(f"Negative cost on link {node} -> {nxt}")
            total = costs[node] + step
            label = (round(total, COST_DECIMALS), hops + 1, max(largest, nxt))
            if nxt not in labels or label < labels[nxt]:
                labels[nxt] = label
                costs[nxt] = total
                parents[nxt] = node
                heapq.heappush(heap, (*label, nxt))
    raise NoRoute(f"No sink reachable from node {src}")


def path_cost(
    graph: nx.Graph,
    hops: List[NodeId],
    w: Optional[CostWeights] = None,
    norms: Optional[CostNorms] = None,
    weight: str = "cost",
) -> float:
    """sum of the link costs along ``hops``, accumulated in path order"""
    edge_cost = _edge_cost_function(weight, w, norms)
    total = 0.0
    for u, v in zip(hops, hops[1:]):
        total += edge_cost(u, v, graph[u][v])
    return total


def exclude_hotspots(
    graph: nx.Graph, hotspot_reports: Collection[NodeId], keep: Collection[NodeId] = ()
) -> nx.Graph:
    """Copy of ``graph`` without the edges incident to reported
    hotspots. Sinks and the nodes in ``keep`` (the sources) are never
    removed."""
    filtered = graph.copy()
    protected = default_sinks(graph) | set(keep)
    for node in hotspot_reports:
        if node in protected or node not in filtered:
            continue
        if filtered.is_directed():
            incident = list(filtered.in_edges(node)) + list(filtered.out_edges(node))
        else:
            incident = list(filtered.edges(node))
        filtered.remove_edges_from(incident)
    return filtered

