from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from wbanroute.utility.custom_types import NodeId
from .transmit_queue import TransmitQueue


@dataclass
class TdmaFrame:
    """One superframe: each active node owns a slot of ``slots[id]``
    seconds, in increasing id order."""

    frame_len_s: float
    slots: Dict[NodeId, float] = field(default_factory=dict)
    start_s: float = 0.0

    def order(self) -> List[NodeId]:
        return sorted(self.slots)

    def slot_bounds(self) -> List[Tuple[NodeId, float, float]]:
        """nominal ``(node, start, end)`` of every slot"""
        bounds = []
        start = self.start_s
        for node in self.order():
            end = start + self.slots[node]
            bounds.append((node, start, end))
            start = end
        return bounds


def allocate_slots(
    bandwidth_share_s: float,
    queue_weights: Mapping[NodeId, float],
    n_active: Optional[int] = None,
    start_s: float = 0.0,
) -> TdmaFrame:
    """Share a superframe among the active nodes, ``s_i = (frame / N)
    w_i`` rescaled to fill the frame. The last slot absorbs the
    rounding so the slots add up to the frame length exactly.

    Args:
        bandwidth_share_s:
            the frame length in seconds
        queue_weights:
            weight of every active node, all strictly positive
        n_active:
            the number of active nodes, checked against the weights
        start_s:
            the frame start time

    Raises:
        ValueError:
            when no node is active or a weight is not positive
    """
    n = len(queue_weights) if n_active is None else n_active
    if n < 1 or n != len(queue_weights):
        raise ValueError(f"Expected {n} weights, got {len(queue_weights)}")
    if bandwidth_share_s <= 0:
        raise ValueError("The frame length must be strictly positive")
    if any(w <= 0 for w in queue_weights.values()):
        raise ValueError("Every active node needs a strictly positive weight")
    raw = {node: bandwidth_share_s / n * w for node, w in queue_weights.items()}
    total = sum(raw.values())
    ordered = sorted(raw)
    slots: Dict[NodeId, float] = {}
    used = 0.0
    for node in ordered[:-1]:
        slots[node] = raw[node] * bandwidth_share_s / total
        used += slots[node]
    slots[ordered[-1]] = bandwidth_share_s - used
    return TdmaFrame(bandwidth_share_s, slots, start_s)


def queue_weights(
    queues: Mapping[NodeId, TransmitQueue], by_emergency: bool = True
) -> Dict[NodeId, float]:
    """``1 + emergency fraction`` per non-empty queue, or equal
    weights when ``by_emergency`` is off"""
    weights = {}
    for node, queue in queues.items():
        if len(queue):
            weights[node] = 1.0 + queue.emergency_fraction() if by_emergency else 1.0
    return weights
