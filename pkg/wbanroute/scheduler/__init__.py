from .transmit_queue import (
    QueueEntry,
    TransmitQueue,
    waiting_score,
    delay_budgets,
    DEFAULT_BUDGETS,
)
from .tdma import TdmaFrame, allocate_slots, queue_weights
from .replay import (
    NoForwarder,
    NeighborCandidate,
    RouteState,
    adaptive_replay,
    select_stable_neighbor,
)

__all__ = [
    "QueueEntry",
    "TransmitQueue",
    "waiting_score",
    "delay_budgets",
    "DEFAULT_BUDGETS",
    "TdmaFrame",
    "allocate_slots",
    "queue_weights",
    "NoForwarder",
    "NeighborCandidate",
    "RouteState",
    "adaptive_replay",
    "select_stable_neighbor",
]
