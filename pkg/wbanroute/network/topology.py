import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from wbanroute.utility import NodeRole, clamp
from wbanroute.utility.custom_types import Array, Link, NodeId, Position
from .node import NodeState
from .scenario_config import ScenarioConfig
from ._utils import TopologyUnreachable

LOGGER = logging.getLogger(__name__)


@dataclass
class Topology:
    """Nodes, the symmetric range-based adjacency between them, and
    the ground-truth packet reception ratio of every link.

    Args:
        nodes:
            the node states, indexed by id
        adjacency:
            boolean matrix, ``adjacency[i, j]`` iff the distance
            between ``i`` and ``j`` is within range and ``i != j``
        distances:
            pairwise Euclidean distances in meters
        area_m:
            side of the square area
        range_m:
            transmission range
        prr_true:
            ground-truth PRR of each link, keyed by ``(i, j)`` for
            both directions
    """

    nodes: List[NodeState]
    adjacency: Array
    distances: Array
    area_m: float
    range_m: float
    prr_true: Dict[Link, float] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def sink_ids(self) -> List[NodeId]:
        return [node.id for node in self.nodes if node.is_sink]

    @property
    def sensor_ids(self) -> List[NodeId]:
        return [node.id for node in self.nodes if not node.is_sink]

    def neighbors(self, node_id: NodeId) -> List[NodeId]:
        return [int(j) for j in np.flatnonzero(self.adjacency[node_id])]

    def has_link(self, i: NodeId, j: NodeId) -> bool:
        return bool(self.adjacency[i, j])

    def distance(self, i: NodeId, j: NodeId) -> float:
        return float(self.distances[i, j])

    def to_graph(self, alive_only: bool = False) -> nx.Graph:
        """the adjacency as an undirected ``networkx`` graph whose
        nodes carry their role"""
        graph = nx.Graph()
        for node in self.nodes:
            if alive_only and not node.alive:
                continue
            graph.add_node(node.id, role=node.role)
        for i, j in zip(*np.nonzero(np.triu(self.adjacency))):
            if int(i) in graph and int(j) in graph:
                graph.add_edge(int(i), int(j), distance=float(self.distances[i, j]))
        return graph

    def unreachable_sensors(self, alive_only: bool = False) -> Set[NodeId]:
        """sensors with no path to any sink"""
        graph = self.to_graph(alive_only)
        reached: Set[NodeId] = set()
        for sink in self.sink_ids:
            if sink in graph:
                reached |= nx.node_connected_component(graph, sink)
        return {node for node in graph.nodes if node not in reached}


def ground_truth_prr(distance: float, range_m: float, prr_min: float = 0.5) -> float:
    """Distance-decreasing link quality profile
    ``clamp(1 - 0.6 (d / range)^2, prr_min, 1)``"""
    return clamp(1.0 - 0.6 * (distance / range_m) ** 2, prr_min, 1.0)


def sink_positions(n_sinks: int, area_m: float) -> List[Position]:
    """Deterministic sink placement at the mid-edges of the area,
    alternating between opposite sides"""
    mid_edges = [
        (0.0, area_m / 2),
        (area_m, area_m / 2),
        (area_m / 2, 0.0),
        (area_m / 2, area_m),
    ]
    positions = []
    for index in range(n_sinks):
        x, y = mid_edges[index % 4]
        # further sinks on the same edge are spread along it
        layer = index // 4
        if layer:
            offset = area_m * layer / (2 * (n_sinks // 4 + 1))
            if x in (0.0, area_m):
                y = clamp(y + offset, 0.0, area_m)
            else:
                x = clamp(x + offset, 0.0, area_m)
        positions.append((x, y))
    return positions


def from_positions(
    positions: Sequence[Position],
    n_sinks: int,
    cfg: ScenarioConfig,
    prr_rng: Optional[np.random.Generator] = None,
    prr_override: Optional[float] = None,
    area_m: Optional[float] = None,
) -> Topology:
    """Build a topology from explicit coordinates. The last
    ``n_sinks`` positions are the sinks.

    Args:
        positions:
            one ``(x, y)`` per node, sensors first
        n_sinks:
            how many of the trailing positions are sinks
        cfg:
            the scenario providing range, energy and thermal baseline
        prr_rng:
            stream for the per-link jitter; no jitter when ``None``
        prr_override:
            when given, every link gets this ground-truth PRR
        area_m:
            the area side, defaults to ``cfg.area_m``
    """
    coords = np.asarray(positions, dtype=float).reshape(-1, 2)
    n = len(coords)
    if not 1 <= n_sinks <= n:
        raise ValueError(f"Cannot place {n_sinks} sinks among {n} nodes")
    side = cfg.area_m if area_m is None else area_m
    if np.any(coords < 0) or np.any(coords > side):
        raise ValueError("All positions must lie inside the simulation area")
    deltas = coords[:, None, :] - coords[None, :, :]
    distances = np.sqrt((deltas ** 2).sum(axis=-1))
    adjacency = distances <= cfg.range_m
    np.fill_diagonal(adjacency, False)
    nodes = []
    for index, (x, y) in enumerate(coords):
        role = NodeRole.SINK if index >= n - n_sinks else NodeRole.SENSOR
        nodes.append(
            NodeState(
                id=index,
                position=(float(x), float(y)),
                role=role,
                energy_j=cfg.initial_energy_j,
                temperature_c=cfg.t_body_c,
            )
        )
    prr_true: Dict[Link, float] = {}
    for i, j in zip(*np.nonzero(np.triu(adjacency))):
        if prr_override is not None:
            value = prr_override
        else:
            value = ground_truth_prr(float(distances[i, j]), cfg.range_m, cfg.prr_min)
            if prr_rng is not None and cfg.prr_jitter > 0:
                value += prr_rng.uniform(-cfg.prr_jitter, cfg.prr_jitter)
            value = clamp(value, 0.0, 1.0)
        prr_true[(int(i), int(j))] = value
        prr_true[(int(j), int(i))] = value
    return Topology(nodes, adjacency, distances, side, cfg.range_m, prr_true)


def build_topology(
    cfg: ScenarioConfig,
    rng: np.random.Generator,
    prr_rng: Optional[np.random.Generator] = None,
) -> Topology:
    """Place ``cfg.n_nodes`` sensors uniformly at random and the sinks
    at the mid-edges, re-sampling until every sensor reaches a sink.

    Args:
        cfg:
            a validated scenario
        rng:
            the placement stream
        prr_rng:
            the per-link jitter stream

    Raises:
        TopologyUnreachable:
            if no connected placement is found within
            ``cfg.topology_retries`` attempts

    Examples::

        from wbanroute.network import ScenarioConfig, build_topology
        from wbanroute.utility import spawn_streams

        streams = spawn_streams(1)
        topology = build_topology(ScenarioConfig(), streams["topology"], streams["prr"])
    """
    sinks = sink_positions(cfg.n_sinks, cfg.area_m)
    for attempt in range(1, cfg.topology_retries + 1):
        sensors = rng.uniform(0.0, cfg.area_m, size=(cfg.n_nodes, 2))
        positions = [tuple(p) for p in sensors] + sinks
        candidate = from_positions(positions, cfg.n_sinks, cfg, prr_rng=None)
        if not candidate.unreachable_sensors():
            LOGGER.debug("Connected placement found after %d attempt(s)", attempt)
            # jitter is drawn once, for the accepted placement only
            return from_positions(positions, cfg.n_sinks, cfg, prr_rng=prr_rng)
    raise TopologyUnreachable(
        f"No placement of {cfg.n_nodes} nodes with range {cfg.range_m} m in a "
        f"{cfg.area_m} m area connects every sensor to a sink after "
        f"{cfg.topology_retries} attempts"
    )


# Fixed ten-node layout with exactly three sink paths:
# S-A-E-D, S-A-B-C-D and S-F-G-H-I-D
_FIGURE_THREE = {
    "S": (0.0, 0.0),
    "A": (0.4, 0.0),
    "B": (0.55, 0.4),
    "C": (0.95, 0.4),
    "E": (0.75, -0.15),
    "F": (0.0, -0.45),
    "G": (0.4, -0.65),
    "H": (0.85, -0.75),
    "I": (1.2, -0.45),
    "D": (1.1, 0.0),
}
FIGURE_THREE_IDS = {label: index for index, label in enumerate(_FIGURE_THREE)}
_FIGURE_THREE_SHIFT = (0.2, 0.9)
_FIGURE_THREE_AREA = 1.6


def figure_three_topology(cfg: ScenarioConfig) -> Topology:
    """The fixed ten-node hotspot example. Ids follow
    ``FIGURE_THREE_IDS`` (S=0 ... D=9, D is the only sink), the range
    is 0.5 m and every link is perfectly reliable."""
    if cfg.range_m != 0.5:
        raise ValueError("The ten-node layout is defined for a 0.5 m range")
    shift_x, shift_y = _FIGURE_THREE_SHIFT
    positions: List[Tuple[float, float]] = [
        (x + shift_x, y + shift_y) for x, y in _FIGURE_THREE.values()
    ]
    return from_positions(
        positions, 1, cfg, prr_override=1.0, area_m=_FIGURE_THREE_AREA
    )
