from dataclasses import dataclass
from typing import List, Optional, Sequence

from wbanroute.utility.custom_types import NodeId

SEPARATOR = "|"
HEADER = "time|src|hops|cost|trigger"


@dataclass(frozen=True)
class RouteRecord:
    time: float
    src: NodeId
    hops: tuple
    cost: float
    trigger: str

    def to_line(self) -> str:
        hops = "-".join(str(h) for h in self.hops)
        return SEPARATOR.join([repr(self.time), str(self.src), hops, repr(self.cost), self.trigger])

    @classmethod
    def from_line(cls, line: str) -> "RouteRecord":
        time, src, hops, cost, trigger = line.strip().split(SEPARATOR)
        return cls(
            float(time),
            int(src),
            tuple(int(h) for h in hops.split("-")),
            float(cost),
            trigger,
        )


class RouteTrace:
    """One line per route decision: ``time|src|hops|cost|trigger``,
    hops joined by ``-``."""

    def __init__(self, path: Optional[str] = None) -> None:
        self.path = path
        self.records: List[RouteRecord] = []

    def record(
        self, time: float, src: NodeId, hops: Sequence[NodeId], cost: float, trigger: str
    ) -> None:
        self.records.append(RouteRecord(time, src, tuple(hops), cost, trigger))

    def for_source(self, src: NodeId) -> List[RouteRecord]:
        return [r for r in self.records if r.src == src]

    def to_text(self) -> str:
        return "\n".join([HEADER] + [r.to_line() for r in self.records]) + "\n"

    @staticmethod
    def parse(text: str) -> List[RouteRecord]:
        lines = [line for line in text.splitlines() if line.strip()]
        if lines and lines[0] == HEADER:
            lines = lines[1:]
        return [RouteRecord.from_line(line) for line in lines]

    def flush(self) -> None:
        """write the trace to ``path`` when one was given"""
        if self.path:
            with open(self.path, "w") as outfile:
                outfile.write(self.to_text())
