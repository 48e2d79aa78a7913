from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from wbanroute.network import Packet, ScenarioConfig
from wbanroute.utility import PacketClass, QueuePolicy
from wbanroute.utility.custom_types import NodeId


def waiting_score(p: int, allowed_delay_s: float, e_res_j: float) -> float:
    """Waiting score ``(1 / P) (D / E_res)`` of a queued packet; the
    lower the score, the earlier the packet leaves.

    Args:
        p:
            the priority, 1 (normal), 2 (on demand) or 3 (emergency)
        allowed_delay_s:
            the allowed delay ``D`` of the packet class
        e_res_j:
            the residual energy of the queueing node

    Raises:
        ValueError:
            for a dead node or a non-positive allowed delay
    """
    if p not in (1, 2, 3):
        raise ValueError(f"Unknown priority {p}")
    if e_res_j <= 0:
        raise ValueError("A node without energy does not schedule packets")
    if allowed_delay_s <= 0:
        raise ValueError("The allowed delay must be strictly positive")
    return (1.0 / p) * (allowed_delay_s / e_res_j)


def delay_budgets(cfg: ScenarioConfig) -> Dict[PacketClass, float]:
    """allowed delay per traffic class"""
    return {
        PacketClass.EMERGENCY: cfg.delay_budget_emergency_s,
        PacketClass.ON_DEMAND: cfg.delay_budget_on_demand_s,
        PacketClass.NORMAL: cfg.delay_budget_normal_s,
    }


DEFAULT_BUDGETS = {
    PacketClass.EMERGENCY: 0.05,
    PacketClass.ON_DEMAND: 0.25,
    PacketClass.NORMAL: 1.0,
}


@dataclass
class QueueEntry:
    """A packet waiting at a node.

    Args:
        packet:
            the queued packet
        enqueued_at:
            arrival time at this node
        allowed_delay_s:
            ``D`` of the packet's class
        t_w:
            the waiting score at the last dequeue opportunity
    """

    packet: Packet
    enqueued_at: float
    allowed_delay_s: float
    t_w: float = 0.0

    def age(self, now: float) -> float:
        return now - self.enqueued_at

    def is_aged(self, now: float) -> bool:
        return self.age(now) >= self.allowed_delay_s


SortKey = Tuple[float, float, int]


class TransmitQueue:
    """Per-node transmit queue.

    The ordering depends on the policy: ``WAITING_SCORE`` sorts by
    the waiting score recomputed with the current residual energy,
    ``CLASS_PRIORITY`` by class only and ``FIFO`` by arrival. Ties
    are broken by arrival time, then sequence number.

    Args:
        owner:
            the node holding the queue
        policy:
            the ordering policy
        budgets:
            allowed delay per packet class

    Examples::

        queue = TransmitQueue(owner=3, policy=QueuePolicy.WAITING_SCORE)
        queue.push(packet, now=0.0)
        entry = queue.pop_next(now=0.1, e_res=50.0)
    """

    def __init__(
        self,
        owner: NodeId,
        policy: QueuePolicy = QueuePolicy.WAITING_SCORE,
        budgets: Optional[Dict[PacketClass, float]] = None,
    ) -> None:
        self.owner = owner
        self.policy = policy
        self.budgets = dict(DEFAULT_BUDGETS if budgets is None else budgets)
        self.entries: List[QueueEntry] = []

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(list(self.entries))

    def push(
        self, packet: Packet, now: float, allowed_delay_s: Optional[float] = None
    ) -> QueueEntry:
        budget = self.budgets[packet.packet_class] if allowed_delay_s is None else allowed_delay_s
        entry = QueueEntry(packet, now, budget)
        self.entries.append(entry)
        return entry

    def _key(self, e_res: float) -> Callable[[QueueEntry], SortKey]:
        if self.policy is QueuePolicy.WAITING_SCORE:

            def by_score(entry: QueueEntry) -> SortKey:
                entry.t_w = waiting_score(entry.packet.priority, entry.allowed_delay_s, e_res)
                return (entry.t_w, entry.enqueued_at, entry.packet.seq)

            return by_score
        if self.policy is QueuePolicy.CLASS_PRIORITY:
            return lambda e: (-e.packet.priority, e.enqueued_at, e.packet.seq)
        return lambda e: (0.0, e.enqueued_at, e.packet.seq)

    def peek(self, now: float, e_res: float) -> Optional[QueueEntry]:
        """the entry that ``pop_next`` would return"""
        if not self.entries:
            return None
        return min(self.entries, key=self._key(e_res))

    def pop_next(self, now: float, e_res: float) -> Optional[QueueEntry]:
        """remove and return the head of the queue; scores are
        recomputed at every call"""
        head = self.peek(now, e_res)
        if head is not None:
            self.entries.remove(head)
        return head

    def remove(self, entry: QueueEntry) -> None:
        self.entries.remove(entry)

    def pop_aged(self, now: float) -> Optional[QueueEntry]:
        """Remove and return the most urgent entry whose residence
        reached its allowed delay: highest priority first, then
        earliest arrival."""
        aged = [e for e in self.entries if e.is_aged(now)]
        if not aged:
            return None
        entry = min(aged, key=lambda e: (-e.packet.priority, e.enqueued_at, e.packet.seq))
        self.entries.remove(entry)
        return entry

    def purge_older_than(self, now: float, max_age: float) -> List[QueueEntry]:
        """drop and return the entries that stayed longer than
        ``max_age``"""
        expired = [e for e in self.entries if e.age(now) > max_age]
        self.entries = [e for e in self.entries if e.age(now) <= max_age]
        return expired

    def drop_relayed(self, node_id: Optional[NodeId] = None) -> List[QueueEntry]:
        """drop and return the packets not originated by ``node_id``
        (the owner by default)"""
        origin = self.owner if node_id is None else node_id
        relayed = [e for e in self.entries if e.packet.src != origin]
        self.entries = [e for e in self.entries if e.packet.src == origin]
        return relayed

    def drain(self) -> List[QueueEntry]:
        entries, self.entries = self.entries, []
        return entries

    def emergency_fraction(self) -> float:
        if not self.entries:
            return 0.0
        urgent = sum(1 for e in self.entries if e.packet.packet_class is PacketClass.EMERGENCY)
        return urgent / len(self.entries)
