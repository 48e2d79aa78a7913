import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, List, Mapping, Sequence

import networkx as nx

from wbanroute.network import Topology
from wbanroute.routing import NoRoute
from wbanroute.scheduler import QueueEntry
from wbanroute.utility import ControlType, ProtocolKind, QueuePolicy
from wbanroute.utility.custom_types import NodeId
from .base import RoutingProtocol

if TYPE_CHECKING:
    from wbanroute.simulator import Simulator


@dataclass(frozen=True)
class GradientNeighbor:
    """A neighbor as seen by the greedy forwarder"""

    node: NodeId
    prr: float
    energy_fraction: float
    hops_to_sink: float


def ensa_ban_next_hop(node_hops: float, neighbors: Sequence[GradientNeighbor]) -> NodeId:
    """Greedy choice among the neighbors closer to a sink than the
    forwarding node, maximising ``prr * E / E_initial``; ties go to
    the lower id. Temperature and congestion play no role.

    Args:
        node_hops:
            hop distance of the forwarding node to the nearest sink
        neighbors:
            the candidates

    Raises:
        NoRoute:
            if no neighbor is closer to a sink
    """
    closer = [n for n in neighbors if n.hops_to_sink < node_hops]
    if not closer:
        raise NoRoute("No neighbor is closer to a sink")
    best = min(closer, key=lambda n: (-(n.prr * n.energy_fraction), n.node))
    return best.node


def hop_gradient(topology: Topology) -> Dict[NodeId, int]:
    """BFS hop distance of every alive node to its nearest sink"""
    graph = topology.to_graph(alive_only=True)
    sinks = [s for s in topology.sink_ids if s in graph]
    if not sinks:
        return {}
    return dict(nx.multi_source_dijkstra_path_length(graph, set(sinks)))


class EnsaBanProtocol(RoutingProtocol):
    """Greedy link-quality and residual-energy forwarding over a sink
    hop gradient, refreshed by periodic sink floods. No thermal
    awareness, FIFO queues, equal slots."""

    kind = ProtocolKind.ENSA_BAN
    queue_policy = QueuePolicy.FIFO

    def __init__(self, simulator: "Simulator") -> None:
        super().__init__(simulator)
        self.hops: Mapping[NodeId, int] = {}

    def start(self, now: float) -> None:
        self.schedule("gradient", now)

    def on_periodic(self, task: str, now: float) -> None:
        if task != "gradient":
            return
        self.sim.flood(ControlType.SINK_BEACON, repeats=len(self.sim.topology.sink_ids))
        self.hops = hop_gradient(self.sim.topology)
        self.schedule("gradient", now + self.cfg.gradient_interval_s)

    def neighbors_of(self, node_id: NodeId) -> List[GradientNeighbor]:
        found = []
        for neighbor, entry in self.sim.tables[node_id].items():
            if not self.sim.nodes[neighbor].alive:
                continue
            found.append(
                GradientNeighbor(
                    node=neighbor,
                    prr=entry.prr,
                    energy_fraction=entry.reported_energy_j / self.cfg.initial_energy_j,
                    hops_to_sink=self.hops.get(neighbor, math.inf),
                )
            )
        return found

    def next_hop(self, node_id: NodeId, entry: QueueEntry, now: float) -> NodeId:
        node_hops = self.hops.get(node_id)
        if node_hops is None:
            raise NoRoute(f"Node {node_id} has no sink gradient")
        return ensa_ban_next_hop(node_hops, self.neighbors_of(node_id))
