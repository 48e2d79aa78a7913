import math
from typing import TYPE_CHECKING, Dict, Iterable

import networkx as nx

from wbanroute.link import NeighborTable
from wbanroute.network import NodeState
from wbanroute.routing import Route, build_cost_graph, find_route
from wbanroute.scheduler import QueueEntry
from wbanroute.utility import ControlType, ProtocolKind, QueuePolicy
from wbanroute.utility.custom_types import NodeId
from .base import RoutingProtocol

if TYPE_CHECKING:
    from wbanroute.simulator import Simulator


def _inverse_prr(u: NodeId, v: NodeId, data: Dict) -> float:
    prr = data.get("prr", 0.0)
    return 1.0 / prr if prr > 0 else math.inf


def rrls_route(src: NodeId, graph: nx.Graph) -> Route:
    """Most stable route: minimum sum of ``1 / prr`` over the links,
    read from the ``prr`` edge attribute. Energy, temperature and
    congestion are ignored."""
    return find_route(src, graph, weight=_inverse_prr)


def stability_graph(tables: Dict[NodeId, NeighborTable], nodes: Iterable[NodeState]) -> nx.DiGraph:
    """link-state snapshot carrying the estimated PRR of every link"""
    graph = build_cost_graph(tables, nodes)
    for _, _, data in graph.edges(data=True):
        data["prr"] = data["entry"].prr
    return graph


class RrlsProtocol(RoutingProtocol):
    """Link-stability source routing over a link-state snapshot that
    a periodic flood of ``alive * alive`` advertisements refreshes.
    FIFO queues, equal slots."""

    kind = ProtocolKind.RRLS
    queue_policy = QueuePolicy.FIFO

    def __init__(self, simulator: "Simulator") -> None:
        super().__init__(simulator)
        self.snapshot = nx.DiGraph()
        self.cache: Dict[NodeId, Route] = {}
        self._recorded: Dict[NodeId, tuple] = {}

    def start(self, now: float) -> None:
        self.schedule("lsa", now)

    def on_periodic(self, task: str, now: float) -> None:
        if task != "lsa":
            return
        alive = sum(1 for node in self.sim.nodes if node.alive)
        self.sim.flood(ControlType.LSA, repeats=alive)
        self.snapshot = stability_graph(self.sim.tables, self.sim.nodes)
        self.cache.clear()
        self.schedule("lsa", now + self.cfg.lsa_interval_s)

    def next_hop(self, node_id: NodeId, entry: QueueEntry, now: float) -> NodeId:
        packet = entry.packet
        if self.at_source(node_id, packet):
            route = self.cache.get(node_id)
            if route is None:
                route = rrls_route(node_id, self.snapshot)
                self.cache[node_id] = route
                if self._recorded.get(node_id) != route.key():
                    self._recorded[node_id] = route.key()
                    self.record_route(now, route, "lsa")
            packet.route = list(route.hops)
            return route.hops[1]
        return self.follow_or_fail(node_id, packet)
