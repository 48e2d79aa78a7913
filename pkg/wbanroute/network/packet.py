from dataclasses import dataclass, field
from typing import List, Optional

from wbanroute.utility import PacketClass, PacketKind, ControlType
from wbanroute.utility.custom_types import NodeId


@dataclass
class Packet:
    """A unit of traffic.

    ``dst`` is ``None`` for data packets, which are addressed to
    whichever sink the route ends at. ``route`` is the source route
    written by source-routing protocols; ``hop_times`` holds the
    arrival time at each node of ``hops`` and ``tx_times`` the
    instant each hop was put on the medium.
    """

    seq: int
    src: NodeId
    created_at: float
    size_bits: int
    packet_class: PacketClass = PacketClass.NORMAL
    kind: PacketKind = PacketKind.DATA
    control_type: Optional[ControlType] = None
    dst: Optional[NodeId] = None
    delivered_at: Optional[float] = None
    hops: List[NodeId] = field(default_factory=list)
    hop_times: List[float] = field(default_factory=list)
    tx_times: List[float] = field(default_factory=list)
    route: Optional[List[NodeId]] = None

    def __post_init__(self) -> None:
        if self.size_bits <= 0:
            raise ValueError(f"Packet {self.seq} must carry a positive size")
        if not self.hops:
            self.hops = [self.src]
            self.hop_times = [self.created_at]
        elif self.hops[0] != self.src:
            raise ValueError(f"Packet {self.seq} hop trace must begin with its source")

    @property
    def priority(self) -> int:
        return self.packet_class.value

    @property
    def current_node(self) -> NodeId:
        return self.hops[-1]

    @property
    def is_data(self) -> bool:
        return self.kind is PacketKind.DATA

    def record_hop(self, node: NodeId, tx_start: float, arrival: float) -> None:
        """append the next node of the trace"""
        self.tx_times.append(tx_start)
        self.hops.append(node)
        self.hop_times.append(arrival)

    def mark_delivered(self, now: float) -> None:
        if not self.is_data:
            raise ValueError("Control packets are never delivered as application data")
        if now < self.created_at:
            raise ValueError("A packet cannot be delivered before it was created")
        self.delivered_at = now

    def next_on_route(self) -> Optional[NodeId]:
        """the node after the current one on the source route, if any"""
        if not self.route:
            return None
        here = self.current_node
        if here not in self.route:
            return None
        index = self.route.index(here)
        if index + 1 >= len(self.route):
            return None
        return self.route[index + 1]
