from collections import Counter
from typing import TYPE_CHECKING, Callable, Dict, Optional

import networkx as nx

from wbanroute.routing import NoRoute, Route, find_route
from wbanroute.scheduler import QueueEntry
from wbanroute.utility import ControlType, PacketClass, ProtocolKind, QueuePolicy
from wbanroute.utility.custom_types import NodeId
from .base import RoutingProtocol

if TYPE_CHECKING:
    from wbanroute.simulator import Simulator


def _one_hop(u: NodeId, v: NodeId, data: Dict) -> float:
    return 1.0


def p_aodv_route(
    src: NodeId, graph: nx.Graph, packet_class: PacketClass = PacketClass.NORMAL
) -> Route:
    """Minimum-hop route to the nearest sink, as found by a route
    request flood. The packet class only affects queueing."""
    return find_route(src, graph, weight=_one_hop)


class PAodvProtocol(RoutingProtocol):
    """On-demand minimum-hop source routing with cached routes.

    A discovery floods one request per alive node of the source's
    component and returns one reply per route hop. A cached route is
    dropped when a node on it dies or one of its links fails
    ``aodv_break_threshold`` times in a row; one error message per
    hop back to the source is counted. Queues are ordered by class
    only."""

    kind = ProtocolKind.P_AODV
    queue_policy = QueuePolicy.CLASS_PRIORITY

    def __init__(self, simulator: "Simulator") -> None:
        super().__init__(simulator)
        self.cache: Dict[NodeId, Route] = {}
        self.failures: Counter = Counter()

    def discover(self, src: NodeId, packet_class: PacketClass, now: float) -> Route:
        graph = self.sim.topology.to_graph(alive_only=True)
        self.sim.flood(ControlType.RREQ, senders=nx.node_connected_component(graph, src))
        route = p_aodv_route(src, graph, packet_class)
        self.sim.unicast_control(ControlType.RREP, list(reversed(route.hops)))
        self.cache[src] = route
        self.record_route(now, route, "discovery")
        return route

    def next_hop(self, node_id: NodeId, entry: QueueEntry, now: float) -> NodeId:
        packet = entry.packet
        if self.at_source(node_id, packet):
            route = self.cache.get(node_id)
            if route is None:
                route = self.discover(node_id, packet.packet_class, now)
            packet.route = list(route.hops)
            return route.hops[1]
        return self.follow_or_fail(node_id, packet)

    def _invalidate(self, broken: Callable[[Route], Optional[NodeId]]) -> None:
        """drop every cached route for which ``broken`` names the
        upstream node that detected the break"""
        for src in sorted(self.cache):
            route = self.cache[src]
            upstream = broken(route)
            if upstream is None:
                continue
            back = route.hops[: route.hops.index(upstream) + 1]
            self.sim.unicast_control(ControlType.RERR, list(reversed(back)))
            del self.cache[src]

    def on_link_result(self, sender: NodeId, receiver: NodeId, ok: bool, now: float) -> None:
        link = (sender, receiver)
        if ok:
            self.failures.pop(link, None)
            return
        self.failures[link] += 1
        if self.failures[link] < self.cfg.aodv_break_threshold:
            return
        del self.failures[link]
        self._invalidate(lambda route: sender if link in route.links else None)

    def on_node_death(self, node_id: NodeId, now: float) -> None:
        def upstream_of(route: Route) -> Optional[NodeId]:
            if node_id not in route.hops:
                return None
            index = route.hops.index(node_id)
            return route.hops[max(index - 1, 0)]

        self._invalidate(upstream_of)

