from dataclasses import dataclass, field
from typing import Any, Dict, List

import jsonpickle

from wbanroute.metrics import MetricsReport
from wbanroute.network import NodeState, Packet


@dataclass
class RunResult:
    """Everything a run produced.

    Args:
        metrics:
            the computed report
        event_count:
            number of events executed
        final_nodes:
            node states at the end of the run
        seed:
            the master seed echo
        energy_ledger:
            joules charged per node, event by event
        route_trace:
            the route-trace text
        packets:
            every data packet, when ``keep_packets`` is set
    """

    metrics: MetricsReport
    event_count: int
    final_nodes: List[NodeState]
    seed: int
    energy_ledger: Dict[int, float] = field(default_factory=dict)
    route_trace: str = ""
    packets: List[Packet] = field(default_factory=list)

    def to_json(self) -> str:
        return jsonpickle.encode(self, keys=True)  # type: ignore

    def save(self, path: str) -> None:
        with open(path, "w") as outfile:
            outfile.write(self.to_json())

    @staticmethod
    def load(path: str) -> Any:
        with open(path, "r") as infile:
            return jsonpickle.decode(infile.read(), keys=True)  # type: ignore
