import dataclasses
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from wbanroute.network import ScenarioConfig
from wbanroute.utility import PROTOCOL_ORDER, ProtocolKind, flatten_list_of_lists


@dataclass
class SweepConfig:
    """Config class for a grid of runs that share every scenario
    field except the swept ones.

    Args:
        base:
            the scenario every run starts from
        protocols:
            protocols to run, reordered to the fixed protocol order
        seeds:
            master seeds; every protocol sees the same seeds
        n_nodes:
            node counts to sweep, ``None`` keeps ``base.n_nodes``
        rates:
            data rates to sweep, ``None`` keeps ``base.rate_pkts_per_s``
        fixture:
            name of a fixed topology, e.g. ``"figure3"``; empty for
            random placement
        progress:
            show a progress bar
    """

    base: ScenarioConfig = field(default_factory=ScenarioConfig)
    protocols: List[ProtocolKind] = field(default_factory=lambda: list(PROTOCOL_ORDER))
    seeds: List[int] = field(default_factory=lambda: [1])
    n_nodes: Optional[List[int]] = None
    rates: Optional[List[float]] = None
    fixture: str = ""
    progress: bool = False

    def to_dict(self) -> Dict[str, Any]:
        """method to transform the config file into a dictionary"""
        dictionary = {k: v for k, v in self.__dict__.items() if not k.startswith("_")}
        dictionary["base"] = self.base.to_dict()
        dictionary["protocols"] = [p.value for p in self.protocols]
        return dictionary

    def scenarios(self) -> List[ScenarioConfig]:
        """every run of the grid, ordered by protocol, node count,
        data rate and seed"""
        protocols = [p for p in PROTOCOL_ORDER if p in self.protocols]
        node_counts = self.n_nodes or [self.base.n_nodes]
        rates = self.rates or [self.base.rate_pkts_per_s]
        per_protocol = [
            [
                dataclasses.replace(
                    self.base, protocol=protocol, n_nodes=n, rate_pkts_per_s=rate, rng_seed=seed
                )
                for n in sorted(node_counts)
                for rate in sorted(rates)
                for seed in sorted(self.seeds)
            ]
            for protocol in protocols
        ]
        return flatten_list_of_lists(per_protocol)
