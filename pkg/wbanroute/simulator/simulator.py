import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from wbanroute.energy import EnergyParams, apply_energy_step
from wbanroute.link import HelloPayload, NeighborTable, simulate_link_delivery
from wbanroute.metrics import RunCounters, compute_metrics
from wbanroute.network import (
    Packet,
    ScenarioConfig,
    Topology,
    ValidationError,
    build_topology,
    validate,
)
from wbanroute.protocols import build_protocol
from wbanroute.routing import NoRoute, RouteTrace
from wbanroute.scheduler import (
    NoForwarder,
    QueueEntry,
    TdmaFrame,
    TransmitQueue,
    allocate_slots,
    delay_budgets,
    queue_weights,
)
from wbanroute.thermal import ThermalParams, classify_hotspot, step_temperature
from wbanroute.utility import (
    ControlType,
    DropCause,
    EventKind,
    HotspotDecision,
    PacketClass,
    spawn_streams,
)
from wbanroute.utility.custom_types import NodeId
from .event_log import EventLog
from .events import Event, EventQueue
from .run_result import RunResult

LOGGER = logging.getLogger(__name__)

_EPS = 1e-9


class InvariantViolation(Exception):
    """Raised when an internal ordering or accounting check fails;
    the run is aborted instead of producing corrupted results"""

    pass


class Simulator:
    """Discrete-event engine of one scenario run.

    Every sensor (or the configured sources) originates constant
    bit rate traffic; HELLO beacons feed the neighbor tables; a TDMA
    superframe shares a single medium between the nodes with queued
    traffic; a thermal tick integrates the temperature of every node;
    the routing protocol is consulted for every forwarding decision.

    Args:
        cfg:
            a valid scenario
        topology:
            a prebuilt topology, for fixtures; built from the
            scenario otherwise
        keep_events:
            keep the structured event log in memory even when no
            log path is configured

    Examples::

        from wbanroute.network import ScenarioConfig
        from wbanroute.simulator import Simulator

        result = Simulator(ScenarioConfig(n_nodes=20, sim_time_s=60)).run()
        result.metrics.throughput_kbps
    """

    def __init__(
        self,
        cfg: ScenarioConfig,
        topology: Optional[Topology] = None,
        keep_events: bool = False,
    ) -> None:
        validate(cfg)
        self.cfg = cfg
        self.streams = spawn_streams(cfg.rng_seed)
        if topology is None:
            topology = build_topology(cfg, self.streams["topology"], self.streams["prr"])
        self.topology = topology
        self.nodes = topology.nodes
        self.energy = EnergyParams.from_config(cfg)
        self.thermal = ThermalParams.from_config(cfg)
        self.events = EventQueue()
        self.log = EventLog(cfg.event_log or None, keep=keep_events)
        self.trace = RouteTrace(cfg.route_trace or None)
        self.counters = RunCounters()
        self.ledger: Dict[NodeId, float] = {node.id: 0.0 for node in self.nodes}
        self.tables: Dict[NodeId, NeighborTable] = {
            node.id: NeighborTable(node.id, delay_prior_s=cfg.airtime_s) for node in self.nodes
        }
        self.sources = self._resolve_sources()
        self.protocol = build_protocol(cfg.protocol, simulator=self)
        budgets = delay_budgets(cfg)
        self.queues: Dict[NodeId, TransmitQueue] = {
            node.id: TransmitQueue(node.id, self.protocol.queue_policy, budgets)
            for node in self.nodes
            if not node.is_sink
        }
        self.in_flight: Dict[int, Packet] = {}
        self.packets: List[Packet] = []
        self.medium_free = 0.0
        self._next_seq = 0
        self._handlers: Dict[EventKind, Callable[[Event], None]] = {
            EventKind.PACKET_ORIGIN: self._packet_origin,
            EventKind.HELLO_TICK: self._hello_tick,
            EventKind.TDMA_FRAME: self._tdma_frame,
            EventKind.THERMAL_TICK: self._thermal_tick,
            EventKind.LINK_DELIVERY: self._link_delivery,
            EventKind.ROUTE_REFRESH: self._route_refresh,
        }

    @property
    def now(self) -> float:
        return self.events.now

    def _resolve_sources(self) -> List[NodeId]:
        sensors = self.topology.sensor_ids
        configured = self.cfg.sources()
        if configured is None:
            return sensors
        unknown = sorted(set(configured) - set(sensors))
        if unknown:
            raise ValidationError(f"source ids {unknown} are not sensors", field="source_ids")
        return sorted(set(configured))

    # ------------------------------------------------------------------ run

    def run(self) -> RunResult:
        """Execute the scenario until ``sim_time_s``.

        Raises:
            InvariantViolation:
                when an internal check fails
        """
        cfg = self.cfg
        LOGGER.info(
            "Running %s: %d nodes, %.1f pkt/s, %.1f s, seed %d",
            cfg.protocol.value, self.topology.n, cfg.rate_pkts_per_s,
            cfg.sim_time_s, cfg.rng_seed,
        )
        # scheduled first so nothing at exactly sim_time_s runs
        self.events.at(cfg.sim_time_s, EventKind.SIM_END)
        self.events.at(0.0, EventKind.HELLO_TICK)
        self.protocol.start(0.0)
        self.events.at(0.0, EventKind.TDMA_FRAME)
        self.events.at(self.thermal.dt, EventKind.THERMAL_TICK)
        period = 1.0 / cfg.rate_pkts_per_s
        for src in self.sources:
            phase = float(self.streams["phase"].uniform(0.0, period))
            self.events.at(phase, EventKind.PACKET_ORIGIN, src)

        last_time = 0.0
        while True:
            event = self.events.next_event()
            if event is None or event.kind is EventKind.SIM_END:
                break
            if event.time_s < last_time:
                raise InvariantViolation("Event times went backwards")
            last_time = event.time_s
            self._handlers[event.kind](event)
        return self._finish()

    def _finish(self) -> RunResult:
        for packet in self.in_flight.values():
            self.counters.in_flight[packet.packet_class] += 1
        unbalanced = self.counters.unbalanced_classes()
        if unbalanced:
            raise InvariantViolation(f"Packet accounting does not close for {unbalanced}")
        spent = sum(n.initial_energy_j - n.energy_j for n in self.nodes if not n.is_sink)
        charged = sum(self.ledger.values())
        if abs(spent - charged) > 1e-9 * max(1.0, abs(spent)):
            raise InvariantViolation(f"Energy ledger {charged} J differs from spent {spent} J")
        metrics = compute_metrics(self.counters, self.cfg, self.nodes)
        self.log.flush()
        self.trace.flush()
        LOGGER.info(
            "Finished %s: delivered %d/%d, throughput %.3f kbps",
            self.cfg.protocol.value, metrics.delivered, metrics.originated,
            metrics.throughput_kbps,
        )
        return RunResult(
            metrics=metrics,
            event_count=self.events.processed,
            final_nodes=list(self.nodes),
            seed=self.cfg.rng_seed,
            energy_ledger=dict(self.ledger),
            route_trace=self.trace.to_text(),
            packets=list(self.packets),
        )

    # ------------------------------------------------------- radio charges

    def charge(
        self, node_id: NodeId, tx: Iterable[Tuple[int, float]] = (), rx_bits: int = 0
    ) -> float:
        """charge radio activity to a node through the energy model
        and the ledger"""
        node = self.nodes[node_id]
        was_alive = node.alive
        charged = apply_energy_step(node, list(tx), rx_bits, self.energy)
        self.ledger[node_id] += charged
        if was_alive and not node.alive:
            self._on_death(node_id)
        return charged

    def _on_death(self, node_id: NodeId) -> None:
        if self.counters.first_death_s is None:
            self.counters.first_death_s = self.now
        LOGGER.info("Node %d ran out of energy at %.3f s", node_id, self.now)
        self.log.record(self.now, "death", node_id)
        for entry in self.queues[node_id].drain():
            self._drop(entry.packet, DropCause.DEAD_NODE, node_id)
        self.protocol.on_node_death(node_id, self.now)

    def flood(
        self,
        control_type: ControlType,
        senders: Optional[Iterable[NodeId]] = None,
        repeats: int = 1,
    ) -> int:
        """Every alive sender broadcasts ``repeats`` control packets;
        each is a counted transmission heard by all alive neighbors.

        Returns:
            int:
                the number of transmissions
        """
        bits = self.cfg.hello_size_bits * repeats
        ids = sorted(n.id for n in self.nodes if n.alive) if senders is None else sorted(senders)
        count = 0
        for sender in ids:
            if not self.nodes[sender].alive:
                continue
            self.charge(sender, [(bits, self.topology.range_m)])
            count += repeats
            for neighbor in self.topology.neighbors(sender):
                if self.nodes[neighbor].alive:
                    self.charge(neighbor, rx_bits=bits)
        self.counters.control(control_type, count)
        return count

    def unicast_control(self, control_type: ControlType, hops: Sequence[NodeId]) -> int:
        """one control packet relayed along ``hops``"""
        bits = self.cfg.hello_size_bits
        count = 0
        for u, v in zip(hops, hops[1:]):
            if not self.nodes[u].alive:
                break
            self.charge(u, [(bits, self.topology.distance(u, v))])
            count += 1
            if self.nodes[v].alive:
                self.charge(v, rx_bits=bits)
        self.counters.control(control_type, count)
        return count

    # ------------------------------------------------------------ handlers

    def _draw_class(self) -> PacketClass:
        draw = self.streams["traffic"].random()
        if draw < self.cfg.frac_emergency:
            return PacketClass.EMERGENCY
        if draw < self.cfg.frac_emergency + self.cfg.frac_on_demand:
            return PacketClass.ON_DEMAND
        return PacketClass.NORMAL

    def _packet_origin(self, event: Event) -> None:
        src = event.payload
        now = event.time_s
        if not self.nodes[src].alive:
            return
        packet = Packet(self._next_seq, src, now, self.cfg.packet_size_bits, self._draw_class())
        self._next_seq += 1
        self.counters.originate(packet)
        self.in_flight[packet.seq] = packet
        if self.cfg.keep_packets:
            self.packets.append(packet)
        self.queues[src].push(packet, now)
        self.log.record(now, EventKind.PACKET_ORIGIN.value, src, packet.seq,
                        {"class": packet.packet_class.name.lower()})
        self.events.at(now + 1.0 / self.cfg.rate_pkts_per_s, EventKind.PACKET_ORIGIN, src)

    def _hello_tick(self, event: Event) -> None:
        now = event.time_s
        cfg = self.cfg
        bits = cfg.hello_size_bits
        link = self.streams["link"]
        for node in self.nodes:
            if not node.alive:
                continue
            hello = HelloPayload(node.id, node.energy_j, node.temperature_c, node.asleep, now)
            self.charge(node.id, [(bits, self.topology.range_m)])
            self.counters.control(ControlType.HELLO)
            for neighbor in self.topology.neighbors(node.id):
                if not self.nodes[neighbor].alive:
                    continue
                self.charge(neighbor, rx_bits=bits)
                received = simulate_link_delivery(self.topology.prr_true[(node.id, neighbor)], link)
                self.tables[neighbor].record_hello(hello, received, now, cfg.prr_window)
        for node in self.nodes:
            if not node.alive:
                continue
            table = self.tables[node.id]
            for neighbor in self.topology.neighbors(node.id):
                if not self.nodes[neighbor].alive:
                    table.record_miss(neighbor, now)
            for evicted in table.evict_stale(now, cfg.hello_interval_s):
                LOGGER.debug("Node %d evicted neighbor %d at %.1f s", node.id, evicted, now)
        self.protocol.on_hello_tick(now)
        self.events.at(now + cfg.hello_interval_s, EventKind.HELLO_TICK)

    def _thermal_tick(self, event: Event) -> None:
        now = event.time_s
        changed: List[NodeId] = []
        for node in self.nodes:
            if node.is_sink:
                node.reset_window()
                continue
            node.temperature_c = step_temperature(node, node.radio_energy_window_j, self.thermal)
            node.peak_temperature_c = max(node.peak_temperature_c, node.temperature_c)
            node.reset_window()
            if not (self.protocol.thermal_aware and node.alive):
                continue
            decision = classify_hotspot(node, self.thermal)
            if decision is HotspotDecision.ENTER_SLEEP:
                node.asleep = True
                self.counters.hotspot_events += 1
                for entry in self.queues[node.id].drop_relayed():
                    self._drop(entry.packet, DropCause.HOTSPOT, node.id)
                changed.append(node.id)
            elif decision is HotspotDecision.WAKE:
                node.asleep = False
                changed.append(node.id)
        for node_id in changed:
            node = self.nodes[node_id]
            kind = "sleep" if node.asleep else "wake"
            LOGGER.debug("Node %d %s at %.1f s (%.3f C)", node_id, kind, now, node.temperature_c)
            self.log.record(now, kind, node_id, None, {"temperature": node.temperature_c})
            self.flood(ControlType.ROUTE_UPDATE)
            for neighbor in self.topology.neighbors(node_id):
                if self.nodes[neighbor].alive:
                    self.tables[neighbor].refresh_state(
                        node_id, node.energy_j, node.temperature_c, node.asleep
                    )
        if changed:
            self.protocol.on_hotspot_change(now, changed)
        self.events.at(now + self.thermal.dt, EventKind.THERMAL_TICK)

    def _route_refresh(self, event: Event) -> None:
        self.protocol.on_periodic(event.payload, event.time_s)

    def _check_slots(self, frame: TdmaFrame) -> None:
        total = sum(frame.slots.values())
        if abs(total - frame.frame_len_s) > 1e-12:
            raise InvariantViolation(f"TDMA slots sum to {total}, not {frame.frame_len_s}")

    def _tdma_frame(self, event: Event) -> None:
        now = event.time_s
        cfg = self.cfg
        for node_id, queue in self.queues.items():
            for entry in queue.purge_older_than(now, cfg.max_age_s):
                self._drop(entry.packet, DropCause.MAX_AGE, node_id)
        active = {i: q for i, q in self.queues.items() if len(q) and self.nodes[i].alive}
        if active:
            weights = queue_weights(active, by_emergency=self.protocol.weighted_slots)
            frame = allocate_slots(cfg.tdma_frame_s, weights, len(weights), start_s=now)
            self._check_slots(frame)
            cursor = max(now, self.medium_free)
            if self.protocol.urgent_phase:
                for node_id in frame.order():
                    if not self.nodes[node_id].alive:
                        continue
                    aged = self.queues[node_id].pop_aged(cursor)
                    if aged is not None:
                        cursor = self._transmit(node_id, aged, cursor)
            slot_start = cursor
            for node_id in frame.order():
                slot_end = slot_start + frame.slots[node_id]
                cursor = max(slot_start, self.medium_free)
                queue = self.queues[node_id]
                node = self.nodes[node_id]
                sent = 0
                while len(queue) and node.alive:
                    if sent and cursor + cfg.airtime_s > slot_end + _EPS:
                        break
                    entry = queue.pop_next(cursor, node.energy_j)
                    if entry is None:
                        break
                    cursor = self._transmit(node_id, entry, cursor)
                    sent += 1
                slot_start = max(slot_end, cursor)
        self.events.at(max(now + cfg.tdma_frame_s, self.medium_free), EventKind.TDMA_FRAME)

    def _transmit(self, node_id: NodeId, entry: QueueEntry, start: float) -> float:
        """put the packet of ``entry`` on the medium at ``start`` and
        return the time the medium is free again"""
        packet = entry.packet
        cfg = self.cfg
        if self.protocol.thermal_aware and self.nodes[node_id].asleep and packet.src != node_id:
            raise InvariantViolation(f"Sleeping node {node_id} relayed packet {packet.seq}")
        if len(packet.hops) - 1 >= cfg.hop_limit:
            self._drop(packet, DropCause.HOP_LIMIT, node_id)
            return start
        try:
            receiver = self.protocol.next_hop(node_id, entry, start)
        except (NoRoute, NoForwarder) as error:
            LOGGER.debug("Packet %d dropped at node %d: %s", packet.seq, node_id, error)
            self._drop(packet, DropCause.NO_ROUTE, node_id)
            return start
        if not self.topology.has_link(node_id, receiver):
            raise InvariantViolation(f"Node {node_id} forwarded to non-neighbor {receiver}")
        if start < self.medium_free - _EPS:
            raise InvariantViolation(f"Transmission at {start} overlaps the medium until {self.medium_free}")
        end = start + cfg.airtime_s
        self.medium_free = end
        self.counters.data_tx += 1
        self.charge(node_id, [(packet.size_bits, self.topology.distance(node_id, receiver))])
        if self.nodes[receiver].alive:
            self.charge(receiver, rx_bits=packet.size_bits)
        self.protocol.on_transmit(node_id, receiver, packet, start)
        self.log.record(start, "transmit", node_id, packet.seq,
                        {"to": receiver, "src": packet.src, "start": start, "end": end, "at": self.now})
        self.events.at(end, EventKind.LINK_DELIVERY, (packet, node_id, receiver, start, entry.enqueued_at))
        return end

    def _link_delivery(self, event: Event) -> None:
        packet, sender, receiver_id, start, enqueued_at = event.payload
        now = event.time_s
        received = simulate_link_delivery(
            self.topology.prr_true[(sender, receiver_id)], self.streams["link"]
        )
        receiver = self.nodes[receiver_id]
        self.protocol.on_link_result(sender, receiver_id, received and receiver.alive, now)
        if not receiver.alive:
            self._drop(packet, DropCause.DEAD_NODE, receiver_id)
            return
        if not received:
            self.counters.link_failures += 1
            self._drop(packet, DropCause.LINK_LOSS, sender)
            return
        self.counters.link_successes += 1
        packet.record_hop(receiver_id, start, now)
        self.tables[sender].record_delay(receiver_id, now - enqueued_at, self.cfg.ewma_alpha)
        if receiver.is_sink:
            packet.mark_delivered(now)
            self.counters.deliver(packet)
            del self.in_flight[packet.seq]
            self.log.record(now, "deliver", receiver_id, packet.seq,
                            {"hops": list(packet.hops), "delay": now - packet.created_at})
        elif self.protocol.thermal_aware and receiver.asleep:
            self._drop(packet, DropCause.HOTSPOT, receiver_id)
        else:
            self.queues[receiver_id].push(packet, now)

    def _drop(self, packet: Packet, cause: DropCause, node_id: Optional[NodeId] = None) -> None:
        self.counters.drop(packet, cause)
        self.in_flight.pop(packet.seq, None)
        self.log.record(self.now, "drop", node_id, packet.seq, {"cause": cause.value})


def run(
    cfg: ScenarioConfig, topology: Optional[Topology] = None, keep_events: bool = False
) -> RunResult:
    """Run one scenario and return its result.

    Args:
        cfg:
            the scenario
        topology:
            optional fixed topology
        keep_events:
            keep the event log in memory

    Raises:
        TopologyUnreachable:
            if no connected placement exists
        InvariantViolation:
            if an internal check fails
    """
    return Simulator(cfg, topology, keep_events).run()
