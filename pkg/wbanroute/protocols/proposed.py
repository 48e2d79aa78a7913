import logging
from typing import TYPE_CHECKING, Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from wbanroute.network import Packet
from wbanroute.routing import (
    CongestionMonitor,
    CostNorms,
    CostWeights,
    NoRoute,
    Route,
    build_cost_graph,
    find_route,
    link_cost,
    path_cost,
)
from wbanroute.scheduler import (
    NeighborCandidate,
    QueueEntry,
    RouteState,
    adaptive_replay,
    select_stable_neighbor,
)
from wbanroute.utility import ProtocolKind, QueuePolicy, ReplayAction
from wbanroute.utility.custom_types import Link, NodeId
from .base import RoutingProtocol

if TYPE_CHECKING:
    from wbanroute.simulator import Simulator

LOGGER = logging.getLogger(__name__)


class ProposedProtocol(RoutingProtocol):
    """Thermal-aware, energy-balanced and reliability-aware source
    routing.

    Every source keeps a primary route of minimum multi-criteria
    cost over the link-state view assembled from the neighbor tables,
    plus a second route found with the primary's links made more
    expensive. Hotspots and relays with critically low energy are
    excluded; congested routes are demoted for one window; packets
    at the head of a source queue go through the adaptive replay
    rules. Relays follow the source route and re-plan from themselves
    when the next hop became unusable.
    """

    kind = ProtocolKind.PROPOSED
    queue_policy = QueuePolicy.WAITING_SCORE
    thermal_aware = True
    weighted_slots = True
    urgent_phase = True

    def __init__(self, simulator: "Simulator") -> None:
        super().__init__(simulator)
        cfg = self.cfg
        self.weights = CostWeights.from_config(cfg)
        self.norms = CostNorms.from_config(cfg)
        self.monitor = CongestionMonitor(
            cfg.congestion_tau_s, cfg.congestion_lambda, cfg.demotion_factor
        )
        self.graph = nx.DiGraph()
        self.version = 0
        self._snapshot: Dict[Link, float] = {}
        self._active: Dict[NodeId, Tuple[NodeId, ...]] = {}
        self._diverted: Dict[NodeId, Tuple[NodeId, ...]] = {}
        # edge costs and exclusions the registered routes were computed on
        self._computed: Optional[Tuple[Dict[Link, float], FrozenSet[NodeId]]] = None

    # ----------------------------------------------------------- link state

    def _build_graph(self) -> nx.DiGraph:
        return build_cost_graph(self.sim.tables, self.sim.nodes, self.weights, self.norms)

    def _take_snapshot(self) -> bool:
        """store the current edge costs; ``True`` when the edge set
        changed or a cost moved by more than the change ratio"""
        costs = {(u, v): data["cost"] for u, v, data in self.graph.edges(data=True)}
        ratio = self.cfg.cost_change_ratio
        changed = set(costs) != set(self._snapshot) or any(
            abs(cost - self._snapshot[link]) > ratio * self._snapshot[link]
            for link, cost in costs.items()
        )
        if changed:
            self._snapshot = costs
            self.version += 1
        return changed

    def _critical_energy(self) -> float:
        return self.cfg.critical_energy_fraction * self.cfg.initial_energy_j

    def excluded_nodes(self) -> Set[NodeId]:
        """relays reported as hotspots or below the critical energy
        by any alive neighbor; sinks are never excluded"""
        critical = self._critical_energy()
        excluded: Set[NodeId] = set()
        for owner, table in self.sim.tables.items():
            if not self.sim.nodes[owner].alive:
                continue
            for neighbor, entry in table.items():
                if self.sim.nodes[neighbor].is_sink:
                    continue
                if entry.hotspot or entry.reported_energy_j < critical:
                    excluded.add(neighbor)
        return excluded

    # -------------------------------------------------------------- routes

    def _increased_links(self, costs: Dict[Link, float], excluded: Set[NodeId]) -> Optional[Set[Link]]:
        """Links that became more expensive or disappeared since the
        last recomputation, or ``None`` when some link got cheaper,
        appeared, or a node left the excluded set."""
        if self._computed is None:
            return None
        before, excluded_before = self._computed
        if not excluded_before <= excluded:
            return None
        increased = set(before) - set(costs)
        for link, cost in costs.items():
            old = before.get(link)
            if old is None or cost < old:
                return None
            if cost > old:
                increased.add(link)
        return increased

    def _unaffected(self, src: NodeId, increased: Set[Link], newly_excluded: Set[NodeId]) -> bool:
        # costs only went up elsewhere, so the registered routes stay optimal
        for route in self.monitor.routes_of(src):
            if route is None:
                continue
            if any(link in increased for link in route.links):
                return False
            if newly_excluded.intersection(route.hops[1:]):
                return False
        return True

    def recompute(self, now: float, trigger: str) -> None:
        """recompute and register the routes of every source whose
        registered routes may no longer be the cheapest"""
        excluded = self.excluded_nodes()
        factor = self.cfg.demotion_factor
        costs = {(u, v): data["cost"] for u, v, data in self.graph.edges(data=True)}
        increased = self._increased_links(costs, excluded)
        newly_excluded = excluded - self._computed[1] if self._computed is not None else set()
        self._computed = (costs, frozenset(excluded))
        for src in self.sim.sources:
            previous, _ = self.monitor.routes_of(src)
            if not self.sim.nodes[src].alive:
                self.monitor.forget(src)
                continue
            if increased is not None and self._unaffected(src, increased, newly_excluded):
                continue
            try:
                primary = find_route(src, self.graph, excluded=excluded)
            except NoRoute:
                self.monitor.forget(src)
                continue
            second: Optional[Route] = None
            try:
                second = find_route(src, self.graph, excluded=excluded, penalised=primary.links, factor=factor)
                second.cost = path_cost(self.graph, second.hops)
            except NoRoute:
                pass
            primary, second = self.monitor.register(src, primary, second)
            if previous is None or previous.key() != primary.key():
                self.record_route(now, primary, "initial" if previous is None else trigger)
            self._active[src] = self.active_route(src, now).key()  # type: ignore

    def active_route(self, src: NodeId, now: float) -> Optional[Route]:
        """the route a source currently sends on"""
        primary, second = self.monitor.routes_of(src)
        if primary is not None and second is not None and primary.is_demoted(now):
            return second
        return primary

    def _refresh_graph(self, now: float, trigger: str) -> None:
        self.graph = self._build_graph()
        if self._take_snapshot() or trigger != "lsdb_change":
            self.recompute(now, trigger)

    def start(self, now: float) -> None:
        self.schedule("refresh", now + self.cfg.route_refresh_s)
        self.schedule("congestion", now + self.cfg.congestion_tau_s)

    def on_hello_tick(self, now: float) -> None:
        self._refresh_graph(now, "lsdb_change")

    def on_hotspot_change(self, now: float, nodes: List[NodeId]) -> None:
        self._refresh_graph(now, "hotspot")

    def on_periodic(self, task: str, now: float) -> None:
        if task == "refresh":
            self._refresh_graph(now, "periodic")
            self.schedule("refresh", now + self.cfg.route_refresh_s)
        elif task == "congestion":
            if self.monitor.close_window(now):
                self._record_congestion_switches(now)
            self.schedule("congestion", now + self.cfg.congestion_tau_s)

    def _record_congestion_switches(self, now: float) -> None:
        for src in self.sim.sources:
            active = self.active_route(src, now)
            if active is None:
                continue
            if self._active.get(src) != active.key():
                self._active[src] = active.key()
                self.record_route(now, active, "congestion")

    def on_transmit(self, sender: NodeId, receiver: NodeId, packet: Packet, now: float) -> None:
        if packet.is_data:
            self.monitor.record_transmission(sender, receiver)

    # ---------------------------------------------------------- forwarding

    def usable(self, node_id: NodeId, neighbor: NodeId) -> bool:
        """whether ``node_id`` may still hand packets to ``neighbor``"""
        if not self.sim.nodes[neighbor].alive:
            return False
        entry = self.sim.tables[node_id].get(neighbor)
        if entry is None or entry.hotspot:
            return False
        if self.sim.nodes[neighbor].is_sink:
            return True
        return entry.reported_energy_j >= self._critical_energy()

    def _reaches_sink(self, node_id: NodeId, excluded: Set[NodeId]) -> Optional[Route]:
        try:
            return find_route(node_id, self.graph, excluded=excluded)
        except NoRoute:
            return None

    def candidates(self, node_id: NodeId) -> List[NeighborCandidate]:
        """neighbors of ``node_id`` a hot node could divert to"""
        excluded = self.excluded_nodes() | {node_id}
        found = []
        for neighbor, entry in self.sim.tables[node_id].items():
            state = self.sim.nodes[neighbor]
            if not state.alive:
                continue
            reaches = state.is_sink or self._reaches_sink(neighbor, excluded) is not None
            found.append(
                NeighborCandidate(
                    node=neighbor,
                    temperature_c=entry.reported_temp_c,
                    link_cost=link_cost(node_id, entry, self.weights, self.norms),
                    has_sink_route=reaches,
                    asleep=entry.hotspot,
                )
            )
        return found

    def _divert(self, src: NodeId, candidates: List[NeighborCandidate], now: float) -> Route:
        neighbor = select_stable_neighbor(candidates)
        entry = self.sim.tables[src][neighbor]
        first = link_cost(src, entry, self.weights, self.norms)
        if self.sim.nodes[neighbor].is_sink:
            route = Route([src, neighbor], first)
        else:
            tail = find_route(neighbor, self.graph, excluded=self.excluded_nodes() | {src})
            route = Route([src] + tail.hops, first + tail.cost)
        if self._diverted.get(src) != route.key():
            self._diverted[src] = route.key()
            self.record_route(now, route, "stable_neighbor")
        return route

    def _plan_at_source(self, src: NodeId, entry: QueueEntry, now: float) -> NodeId:
        node = self.sim.nodes[src]
        primary, second = self.monitor.routes_of(src)
        if primary is None:
            raise NoRoute(f"Node {src} has no route to a sink")
        hot = node.temperature_c > self.sim.thermal.t_thresh
        state = RouteState(
            primary=primary,
            second=second,
            primary_demoted=primary.is_demoted(now),
            candidates=self.candidates(src) if hot else [],
            now=now,
        )
        action = adaptive_replay(entry, node, state, self.sim.thermal)
        if action is ReplayAction.DIVERT_TO_STABLE_NEIGHBOR:
            route = self._divert(src, state.candidates, now)
        elif action is ReplayAction.DIVERT_TO_SECOND_ROUTE and second is not None:
            route = second
        else:
            route = primary
        if not self.usable(src, route.hops[1]):
            return self._repair(src, entry.packet, now)
        entry.packet.route = list(route.hops)
        return route.hops[1]

    def _repair(self, node_id: NodeId, packet: Packet, now: float) -> NodeId:
        route = find_route(node_id, self.graph, excluded=self.excluded_nodes())
        packet.route = list(route.hops)
        self.record_route(now, route, "repair")
        return route.hops[1]

    def next_hop(self, node_id: NodeId, entry: QueueEntry, now: float) -> NodeId:
        packet = entry.packet
        if self.at_source(node_id, packet):
            return self._plan_at_source(node_id, entry, now)
        nxt = packet.next_on_route()
        if nxt is not None and self.usable(node_id, nxt):
            return nxt
        return self._repair(node_id, packet, now)
