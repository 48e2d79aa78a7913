import math
from dataclasses import dataclass
from typing import Dict, Iterable, Optional

import networkx as nx

from wbanroute.link import NeighborEntry, NeighborTable
from wbanroute.network import NodeState, ScenarioConfig
from wbanroute.utility.custom_types import NodeId


@dataclass(frozen=True)
class CostWeights:
    """Weights of temperature, inverse PRR, inverse energy and delay
    in the link cost. They are normalised to sum to one on
    construction, so scaling all four leaves every cost unchanged."""

    w1: float
    w2: float
    w3: float
    w4: float

    def __post_init__(self) -> None:
        weights = (self.w1, self.w2, self.w3, self.w4)
        if any(w < 0 for w in weights):
            raise ValueError("Cost weights must be non-negative")
        total = sum(weights)
        if total <= 0:
            raise ValueError("Cost weights must not all be zero")
        for name, value in zip(("w1", "w2", "w3", "w4"), weights):
            object.__setattr__(self, name, value / total)

    @classmethod
    def from_config(cls, cfg: ScenarioConfig) -> "CostWeights":
        return cls(cfg.w1, cfg.w2, cfg.w3, cfg.w4)


@dataclass(frozen=True)
class CostNorms:
    """Normalisation constants that make the four cost terms
    dimensionless. With ``raw`` the terms are summed in their own
    units."""

    t_body: float
    t_thresh: float
    initial_energy_j: float
    d_ref_s: float
    raw: bool = False

    @classmethod
    def from_config(cls, cfg: ScenarioConfig) -> "CostNorms":
        return cls(
            cfg.t_body_c,
            cfg.t_thresh_c,
            cfg.initial_energy_j,
            cfg.d_ref_s,
            cfg.raw_cost_units,
        )


def link_cost(
    from_id: NodeId, entry: NeighborEntry, w: CostWeights, norms: CostNorms
) -> float:
    """Cost of forwarding from ``from_id`` to ``entry.neighbor``,
    ``w1 T + w2 / PRR + w3 / E + w4 D`` where temperature and energy
    are the next hop's last report.

    Links towards a hotspot, an exhausted node or a link with zero
    reception ratio cost ``inf``.
    """
    if from_id == entry.neighbor:
        raise ValueError(f"Node {from_id} has no link to itself")
    if entry.hotspot or entry.prr <= 0 or entry.reported_energy_j <= 0:
        return math.inf
    if norms.raw:
        temperature = entry.reported_temp_c
        energy = entry.reported_energy_j
        delay = entry.delay_s
    else:
        span = norms.t_thresh - norms.t_body
        temperature = max(0.0, (entry.reported_temp_c - norms.t_body) / span)
        energy = entry.reported_energy_j / norms.initial_energy_j
        delay = entry.delay_s / norms.d_ref_s
    return w.w1 * temperature + w.w2 / entry.prr + w.w3 / energy + w.w4 * delay


def build_cost_graph(
    tables: Dict[NodeId, NeighborTable],
    nodes: Iterable[NodeState],
    w: Optional[CostWeights] = None,
    norms: Optional[CostNorms] = None,
) -> nx.DiGraph:
    """Assemble the link-state view from every alive node's neighbor
    table. Each edge ``i -> j`` carries ``i``'s entry about ``j`` and,
    when weights are given, its cost. Infinite-cost links are left
    out."""
    graph = nx.DiGraph()
    alive = {}
    for node in nodes:
        if node.alive:
            alive[node.id] = node
            graph.add_node(node.id, role=node.role)
    for owner in sorted(alive):
        table = tables.get(owner)
        if table is None:
            continue
        for neighbor, entry in table.items():
            if neighbor not in alive:
                continue
            attributes = {"entry": entry}
            if w is not None and norms is not None:
                cost = link_cost(owner, entry, w, norms)
                if math.isinf(cost):
                    continue
                attributes["cost"] = cost
            graph.add_edge(owner, neighbor, **attributes)
    return graph
