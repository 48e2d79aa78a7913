import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional

from wbanroute.network import NodeState, ScenarioConfig
from wbanroute.utility import DropCause, PacketClass
from .counters import RunCounters


@dataclass
class MetricsReport:
    """The outcome of one run.

    Args:
        protocol:
            the protocol tag
        n_nodes, rate_pkts_per_s, seed, sim_time_s:
            the run coordinates
        throughput_kbps:
            delivered application bits / sim time / 1000
        mean_delay_ms:
            mean end-to-end delay of delivered data packets, ``None``
            when nothing was delivered
        energy_consumed_j:
            sum over sensors of initial minus final energy
        nrl:
            per-hop control transmissions per delivered data packet,
            ``None`` when nothing was delivered
        delay_by_class_ms:
            mean delay per class name, ``None`` for empty classes
        peak_temp_c:
            hottest temperature of each node
        drops:
            drop count per cause
        config:
            the scenario echo
    """

    protocol: str
    n_nodes: int
    rate_pkts_per_s: float
    seed: int
    sim_time_s: float
    throughput_kbps: float
    mean_delay_ms: Optional[float]
    energy_consumed_j: float
    nrl: Optional[float]
    originated: int = 0
    delivered: int = 0
    in_flight: int = 0
    control_tx: int = 0
    data_tx: int = 0
    delay_by_class_ms: Dict[str, Optional[float]] = field(default_factory=dict)
    peak_temp_c: Dict[int, float] = field(default_factory=dict)
    drops: Dict[str, int] = field(default_factory=dict)
    first_death_s: Optional[float] = None
    alive_sensors_at_end: int = 0
    delivery_ratio: Optional[float] = None
    hotspot_events: int = 0
    max_temp_c: float = 0.0
    config: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {k: v for k, v in self.__dict__.items() if not k.startswith("_")}

    @property
    def dropped(self) -> int:
        return sum(self.drops.values())


def _mean_ms(values: Iterable[float]) -> Optional[float]:
    values = list(values)
    if not values:
        return None
    return math.fsum(values) / len(values) * 1000.0


def compute_metrics(
    counters: RunCounters, cfg: ScenarioConfig, nodes: Iterable[NodeState]
) -> MetricsReport:
    """Turn the counters and final node states of a completed run
    into a :class:`MetricsReport`.

    Args:
        counters:
            the engine tallies
        cfg:
            the scenario that was run
        nodes:
            the final node states
    """
    nodes = list(nodes)
    sensors = [n for n in nodes if not n.is_sink]
    delivered = counters.total_delivered
    throughput = 0.0
    if cfg.sim_time_s > 0:
        throughput = counters.delivered_bits / cfg.sim_time_s / 1000.0
    all_delays = [d for cls in PacketClass for d in counters.delays_s.get(cls, [])]
    originated = counters.total_originated
    return MetricsReport(
        protocol=cfg.protocol.value,
        n_nodes=cfg.n_nodes,
        rate_pkts_per_s=cfg.rate_pkts_per_s,
        seed=cfg.rng_seed,
        sim_time_s=cfg.sim_time_s,
        throughput_kbps=throughput,
        mean_delay_ms=_mean_ms(all_delays),
        energy_consumed_j=math.fsum(n.initial_energy_j - n.energy_j for n in sensors),
        nrl=counters.total_control / delivered if delivered else None,
        originated=originated,
        delivered=delivered,
        in_flight=counters.total_in_flight,
        control_tx=counters.total_control,
        data_tx=counters.data_tx,
        delay_by_class_ms={
            cls.name.lower(): _mean_ms(counters.delays_s.get(cls, [])) for cls in PacketClass
        },
        peak_temp_c={n.id: n.peak_temperature_c for n in nodes},
        drops={cause.value: counters.dropped[cause] for cause in DropCause},
        first_death_s=counters.first_death_s,
        alive_sensors_at_end=sum(1 for n in sensors if n.alive),
        delivery_ratio=delivered / originated if originated else None,
        hotspot_events=counters.hotspot_events,
        max_temp_c=max((n.peak_temperature_c for n in sensors), default=cfg.t_body_c),
        config=cfg.to_dict(),
    )
