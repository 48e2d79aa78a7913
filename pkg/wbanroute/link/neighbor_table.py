from collections import deque
from dataclasses import dataclass, field
from itertools import chain
from typing import Deque, Dict, Iterator, List, Optional, Tuple

from wbanroute.utility import EVICTION_INTERVALS
from wbanroute.utility.custom_types import NodeId


@dataclass(frozen=True)
class HelloPayload:
    """State a node advertises in its HELLO beacon"""

    origin: NodeId
    energy_j: float
    temperature_c: float
    hotspot: bool
    timestamp_s: float


@dataclass
class NeighborEntry:
    """What a node believes about one neighbor.

    Args:
        neighbor:
            the neighbor id
        delay_s:
            EWMA one-hop delay towards the neighbor
        reported_energy_j, reported_temp_c, hotspot:
            the neighbor's state from its last received HELLO
        last_heard_s:
            time of the last received HELLO
        history:
            success flag of each expected HELLO slot, most recent
            last, bounded by the PRR window
        measured:
            whether ``delay_s`` comes from samples on this link; until
            then it follows the owner's delay over all its links
    """

    neighbor: NodeId
    delay_s: float
    reported_energy_j: float
    reported_temp_c: float
    hotspot: bool
    last_heard_s: float
    history: Deque[bool] = field(default_factory=deque)
    measured: bool = False

    @property
    def sent_count(self) -> int:
        return len(self.history)

    @property
    def recv_count(self) -> int:
        return sum(self.history)

    @property
    def prr(self) -> float:
        """received over expected HELLOs in the window, with the
        optimistic prior 1.0 before any slot was observed"""
        if not self.history:
            return 1.0
        return self.recv_count / self.sent_count


def update_delay(prev: float, measured: float, alpha: float) -> float:
    """Exponentially weighted moving average of the one-hop delay,
    ``(1 - alpha) prev + alpha measured``."""
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if measured < 0:
        raise ValueError("A delay sample cannot be negative")
    return (1 - alpha) * prev + alpha * measured


def record_hello(
    table: "NeighborTable",
    h: HelloPayload,
    link_succeeded: bool,
    now: float,
    window: int,
) -> "NeighborTable":
    """Account one expected HELLO slot from ``h.origin``.

    A failed slot is only recorded for neighbors already known, evicted
    ones included; a successful one creates the entry if needed, brings
    an evicted neighbor back with its slot history and refreshes the
    reported state.
    """
    if window < 1:
        raise ValueError("The PRR window must hold at least one slot")
    if h.timestamp_s > now:
        raise ValueError("A HELLO cannot come from the future")
    entry = table.entries.get(h.origin)
    if entry is None and h.origin in table.dormant:
        entry = table.dormant[h.origin]
        if link_succeeded:
            table.entries[h.origin] = table.dormant.pop(h.origin)
    if entry is None:
        if not link_succeeded:
            return table
        entry = NeighborEntry(
            neighbor=h.origin,
            delay_s=table.node_delay_s,
            reported_energy_j=h.energy_j,
            reported_temp_c=h.temperature_c,
            hotspot=h.hotspot,
            last_heard_s=now,
            history=deque(maxlen=window),
        )
        table.entries[h.origin] = entry
    elif entry.history.maxlen != window:
        entry.history = deque(entry.history, maxlen=window)
    entry.history.append(link_succeeded)
    if link_succeeded:
        entry.reported_energy_j = h.energy_j
        entry.reported_temp_c = h.temperature_c
        entry.hotspot = h.hotspot
        entry.last_heard_s = now
    return table


@dataclass
class NeighborTable:
    """The neighbor view of a single node.

    Examples::

        table = NeighborTable(owner=0, delay_prior_s=0.016)
        hello = HelloPayload(origin=1, energy_j=100.0, temperature_c=37.0,
                             hotspot=False, timestamp_s=0.0)
        table.record_hello(hello, True, now=0.0, window=20)
        table[1].prr  # 1.0
    """

    owner: NodeId
    delay_prior_s: float = 0.0
    entries: Dict[NodeId, NeighborEntry] = field(default_factory=dict)
    # evicted neighbors keep their slot history here, out of the routing view
    dormant: Dict[NodeId, NeighborEntry] = field(default_factory=dict)
    delay_estimate_s: Optional[float] = None

    @property
    def node_delay_s(self) -> float:
        """EWMA of every delay sample of the owner, the prior of links
        it has not sent on yet"""
        if self.delay_estimate_s is None:
            return self.delay_prior_s
        return self.delay_estimate_s

    def __contains__(self, neighbor: object) -> bool:
        return neighbor in self.entries

    def __getitem__(self, neighbor: NodeId) -> NeighborEntry:
        return self.entries[neighbor]

    def __iter__(self) -> Iterator[NodeId]:
        return iter(sorted(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, neighbor: NodeId) -> Optional[NeighborEntry]:
        return self.entries.get(neighbor)

    def items(self) -> List[Tuple[NodeId, NeighborEntry]]:
        return [(k, self.entries[k]) for k in sorted(self.entries)]

    def record_hello(
        self, h: HelloPayload, link_succeeded: bool, now: float, window: int
    ) -> "NeighborTable":
        return record_hello(self, h, link_succeeded, now, window)

    def record_miss(self, neighbor: NodeId, now: float) -> None:
        """an expected HELLO that was never sent (the neighbor died
        or went silent)"""
        entry = self.entries.get(neighbor) or self.dormant.get(neighbor)
        if entry is not None:
            entry.history.append(False)

    def record_delay(self, neighbor: NodeId, measured: float, alpha: float) -> None:
        """Fold one delay sample towards ``neighbor`` into its EWMA.

        A sample includes the owner's queueing wait, which every
        outgoing link shares; links never sent on follow the owner's
        overall estimate instead of keeping the initial prior.
        """
        self.delay_estimate_s = update_delay(self.node_delay_s, measured, alpha)
        entry = self.entries.get(neighbor)
        if entry is not None:
            entry.delay_s = update_delay(entry.delay_s, measured, alpha)
            entry.measured = True
        for other in chain(self.entries.values(), self.dormant.values()):
            if not other.measured:
                other.delay_s = self.delay_estimate_s

    def refresh_state(
        self, neighbor: NodeId, energy_j: float, temperature_c: float, hotspot: bool
    ) -> None:
        """apply a route-update flood about ``neighbor``"""
        entry = self.entries.get(neighbor)
        if entry is not None:
            entry.reported_energy_j = energy_j
            entry.reported_temp_c = temperature_c
            entry.hotspot = hotspot

    def evict_stale(
        self, now: float, interval: float, intervals: int = EVICTION_INTERVALS
    ) -> List[NodeId]:
        """move neighbors not heard for ``intervals`` hello intervals
        out of the routing view and return their ids.

        The evicted entries keep their slot history, so the PRR
        estimate resumes where it stopped when the neighbor is heard
        again.
        """
        limit = intervals * interval - 1e-9
        stale = [k for k, e in self.entries.items() if now - e.last_heard_s >= limit]
        for neighbor in stale:
            self.dormant[neighbor] = self.entries.pop(neighbor)
        return sorted(stale)
