import heapq
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

from wbanroute.utility import EventKind


@dataclass
class Event:
    """A scheduled simulator event. ``seq`` is assigned by the queue
    on insertion and breaks ties between equal times."""

    time_s: float
    kind: EventKind
    payload: Any = None
    seq: int = -1


class EventQueue:
    """Min-heap of events ordered by ``(time_s, seq)``.

    Examples::

        queue = EventQueue()
        queue.schedule(Event(5.0, EventKind.SIM_END))
        queue.schedule(Event(3.0, EventKind.HELLO_TICK))
        queue.next_event().time_s  # 3.0
    """

    def __init__(self) -> None:
        self._heap: List[Tuple[float, int, Event]] = []
        self._counter = 0
        self.now = 0.0
        self.processed = 0

    def __len__(self) -> int:
        return len(self._heap)

    def schedule(self, event: Event) -> Event:
        """insert ``event``; scheduling in the past is an error"""
        if event.time_s < self.now:
            raise ValueError(
                f"Cannot schedule {event.kind.value} at {event.time_s} before {self.now}"
            )
        event.seq = self._counter
        self._counter += 1
        heapq.heappush(self._heap, (event.time_s, event.seq, event))
        return event

    def at(self, time_s: float, kind: EventKind, payload: Any = None) -> Event:
        return self.schedule(Event(time_s, kind, payload))

    def next_event(self) -> Optional[Event]:
        if not self._heap:
            return None
        _, _, event = heapq.heappop(self._heap)
        self.now = event.time_s
        self.processed += 1
        return event
