from .neighbor_table import (
    HelloPayload,
    NeighborEntry,
    NeighborTable,
    record_hello,
    update_delay,
)
from .channel import simulate_link_delivery

__all__ = [
    "HelloPayload",
    "NeighborEntry",
    "NeighborTable",
    "record_hello",
    "update_delay",
    "simulate_link_delivery",
]
