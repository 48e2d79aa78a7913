from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from wbanroute.network import Packet
from wbanroute.utility import ControlType, DropCause, PacketClass


@dataclass
class RunCounters:
    """Engine-side tallies of a run, the input of
    :func:`compute_metrics`.

    ``delays_s`` holds the end-to-end delay of every delivered data
    packet per class; ``control_tx`` counts every per-hop control
    transmission by type.
    """

    originated: Counter = field(default_factory=Counter)
    delivered: Counter = field(default_factory=Counter)
    delivered_bits: int = 0
    delays_s: Dict[PacketClass, List[float]] = field(default_factory=dict)
    dropped: Counter = field(default_factory=Counter)
    dropped_by_class: Counter = field(default_factory=Counter)
    in_flight: Counter = field(default_factory=Counter)
    control_tx: Counter = field(default_factory=Counter)
    data_tx: int = 0
    link_successes: int = 0
    link_failures: int = 0
    hotspot_events: int = 0
    first_death_s: Optional[float] = None

    def originate(self, packet: Packet) -> None:
        self.originated[packet.packet_class] += 1

    def deliver(self, packet: Packet) -> None:
        if packet.delivered_at is None:
            raise ValueError(f"Packet {packet.seq} has no delivery time")
        self.delivered[packet.packet_class] += 1
        self.delivered_bits += packet.size_bits
        self.delays_s.setdefault(packet.packet_class, []).append(
            packet.delivered_at - packet.created_at
        )

    def drop(self, packet: Packet, cause: DropCause) -> None:
        self.dropped[cause] += 1
        self.dropped_by_class[packet.packet_class] += 1

    def control(self, control_type: ControlType, count: int = 1) -> None:
        self.control_tx[control_type] += count

    @property
    def total_originated(self) -> int:
        return sum(self.originated.values())

    @property
    def total_delivered(self) -> int:
        return sum(self.delivered.values())

    @property
    def total_dropped(self) -> int:
        return sum(self.dropped.values())

    @property
    def total_in_flight(self) -> int:
        return sum(self.in_flight.values())

    @property
    def total_control(self) -> int:
        return sum(self.control_tx.values())

    def unbalanced_classes(self) -> List[PacketClass]:
        """classes for which originated differs from delivered +
        dropped + in flight"""
        return [
            cls
            for cls in PacketClass
            if self.originated[cls]
            != self.delivered[cls] + self.dropped_by_class[cls] + self.in_flight[cls]
        ]
