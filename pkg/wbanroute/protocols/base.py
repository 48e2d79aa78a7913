from abc import ABC, abstractmethod
import logging
from typing import TYPE_CHECKING, List, Optional

from wbanroute.network import Packet
from wbanroute.routing import NoRoute, Route
from wbanroute.scheduler import QueueEntry
from wbanroute.utility import EventKind, ProtocolKind, QueuePolicy
from wbanroute.utility.custom_types import NodeId

if TYPE_CHECKING:
    from wbanroute.simulator import Simulator

LOGGER = logging.getLogger(__name__)


class RoutingProtocol(ABC):
    """Routing and scheduling policy plugged into the simulator.

    Subclasses choose the queue policy and whether the node sleep
    rules, the emergency-weighted slots and the urgent phase apply,
    and implement :meth:`next_hop`. The remaining hooks are called by
    the engine and do nothing by default.

    Args:
        simulator:
            the engine whose state the protocol reads
    """

    kind: ProtocolKind
    queue_policy: QueuePolicy = QueuePolicy.FIFO
    thermal_aware: bool = False
    weighted_slots: bool = False
    urgent_phase: bool = False

    def __init__(self, simulator: "Simulator") -> None:
        self.sim = simulator
        self.cfg = simulator.cfg

    def start(self, now: float) -> None:
        pass

    def on_hello_tick(self, now: float) -> None:
        pass

    def on_hotspot_change(self, now: float, nodes: List[NodeId]) -> None:
        pass

    def on_periodic(self, task: str, now: float) -> None:
        pass

    def on_transmit(self, sender: NodeId, receiver: NodeId, packet: Packet, now: float) -> None:
        pass

    def on_link_result(self, sender: NodeId, receiver: NodeId, ok: bool, now: float) -> None:
        pass

    def on_node_death(self, node_id: NodeId, now: float) -> None:
        pass

    @abstractmethod
    def next_hop(self, node_id: NodeId, entry: QueueEntry, now: float) -> NodeId:
        """The neighbor the packet of ``entry`` is sent to.

        Raises:
            NoRoute:
                when the packet cannot be forwarded
        """
        pass

    def schedule(self, task: str, time_s: float) -> None:
        """run ``on_periodic(task)`` at ``time_s``"""
        self.sim.events.at(time_s, EventKind.ROUTE_REFRESH, task)

    def record_route(self, now: float, route: Route, trigger: str) -> None:
        self.sim.trace.record(now, route.src, route.hops, route.cost, trigger)
        LOGGER.debug("%s route of %d at %.2f s: %s", trigger, route.src, now, route.hops)

    @staticmethod
    def at_source(node_id: NodeId, packet: Packet) -> bool:
        return node_id == packet.src and len(packet.hops) == 1

    def follow_route(self, packet: Packet) -> Optional[NodeId]:
        """next node of the source route if it is still alive"""
        nxt = packet.next_on_route()
        if nxt is None or not self.sim.nodes[nxt].alive:
            return None
        return nxt

    def follow_or_fail(self, node_id: NodeId, packet: Packet) -> NodeId:
        nxt = self.follow_route(packet)
        if nxt is None:
            raise NoRoute(f"Route of packet {packet.seq} is broken at node {node_id}")
        return nxt
