import networkx as nx
import pytest

import wbanroute.protocols.proposed as proposed_module
from wbanroute.network import FIGURE_THREE_IDS, ScenarioConfig, figure_three_topology
from wbanroute.protocols import (
    GradientNeighbor,
    PAodvProtocol,
    ProtocolFactory,
    RrlsProtocol,
    ensa_ban_next_hop,
    hop_gradient,
    p_aodv_route,
    rrls_route,
)
from wbanroute.routing import NoRoute
from wbanroute.simulator import Simulator
from wbanroute.utility import ControlType, NodeRole, PacketClass, ProtocolKind, QueuePolicy

IDS = FIGURE_THREE_IDS


def _figure_three_simulator(protocol):
    cfg = ScenarioConfig(n_nodes=9, n_sinks=1, protocol=protocol, sim_time_s=10.0)
    return Simulator(cfg, topology=figure_three_topology(cfg))


def _two_route_graph(prrs):
    graph = nx.Graph()
    for node in (0, 1, 2):
        graph.add_node(node, role=NodeRole.SENSOR)
    graph.add_node(3, role=NodeRole.SINK)
    for (u, v), prr in zip(((0, 1), (1, 3), (0, 2), (2, 3)), prrs):
        graph.add_edge(u, v, prr=prr)
    return graph


def test_ensa_ban_prefers_more_residual_energy():
    neighbors = [GradientNeighbor(3, 0.9, 0.5, 1), GradientNeighbor(5, 0.9, 1.0, 1)]
    assert ensa_ban_next_hop(2, neighbors) == 5


def test_ensa_ban_tie_goes_to_lower_id():
    neighbors = [GradientNeighbor(7, 1.0, 0.5, 0), GradientNeighbor(4, 0.5, 1.0, 0)]
    assert ensa_ban_next_hop(1, neighbors) == 4


def test_ensa_ban_only_moves_closer_to_a_sink():
    neighbors = [GradientNeighbor(1, 1.0, 1.0, 2), GradientNeighbor(2, 0.2, 0.1, 1)]
    assert ensa_ban_next_hop(2, neighbors) == 2
    with pytest.raises(NoRoute):
        ensa_ban_next_hop(1, neighbors)


def test_hop_gradient_on_figure_three():
    cfg = ScenarioConfig(n_nodes=9, n_sinks=1)
    hops = hop_gradient(figure_three_topology(cfg))
    assert hops[IDS["D"]] == 0
    assert hops[IDS["S"]] == 3
    assert hops[IDS["A"]] == 2
    assert hops[IDS["F"]] == 4


def test_rrls_prefers_the_stable_route():
    route = rrls_route(0, _two_route_graph((0.9, 0.9, 1.0, 0.6)))
    assert route.hops == [0, 1, 3]
    assert route.cost == pytest.approx(2 / 0.9)


def test_rrls_with_perfect_links_is_min_hop():
    cfg = ScenarioConfig(n_nodes=9, n_sinks=1)
    graph = figure_three_topology(cfg).to_graph()
    nx.set_edge_attributes(graph, 1.0, "prr")
    assert rrls_route(IDS["S"], graph).hops == [IDS[x] for x in "SAED"]


def test_rrls_skips_dead_links():
    route = rrls_route(0, _two_route_graph((0.0, 0.9, 1.0, 0.6)))
    assert route.hops == [0, 2, 3]


def test_p_aodv_takes_the_shortest_path():
    cfg = ScenarioConfig(n_nodes=9, n_sinks=1)
    graph = figure_three_topology(cfg).to_graph()
    route = p_aodv_route(IDS["S"], graph, PacketClass.EMERGENCY)
    assert route.hops == [IDS[x] for x in "SAED"]
    assert route.cost == 3.0
    assert "cost" not in graph[IDS["S"]][IDS["A"]]


def test_p_aodv_discovery_and_break_on_death():
    sim = _figure_three_simulator(ProtocolKind.P_AODV)
    protocol = sim.protocol
    assert isinstance(protocol, PAodvProtocol)
    assert protocol.queue_policy is QueuePolicy.CLASS_PRIORITY
    route = protocol.discover(IDS["S"], PacketClass.NORMAL, 0.0)
    assert route.hops == [IDS[x] for x in "SAED"]
    assert sim.counters.control_tx[ControlType.RREQ] == 10
    assert sim.counters.control_tx[ControlType.RREP] == 3
    sim.nodes[IDS["E"]].alive = False
    protocol.on_node_death(IDS["E"], 1.0)
    assert IDS["S"] not in protocol.cache
    assert sim.counters.control_tx[ControlType.RERR] == 1
    again = protocol.discover(IDS["S"], PacketClass.NORMAL, 1.0)
    assert again.hops == [IDS[x] for x in "SABCD"]
    assert sim.counters.control_tx[ControlType.RREQ] == 19
    triggers = [r.trigger for r in sim.trace.records]
    assert triggers == ["discovery", "discovery"]


def test_p_aodv_breaks_after_consecutive_link_failures():
    sim = _figure_three_simulator(ProtocolKind.P_AODV)
    protocol = sim.protocol
    protocol.discover(IDS["S"], PacketClass.NORMAL, 0.0)
    link = (IDS["A"], IDS["E"])
    protocol.on_link_result(*link, False, 1.0)
    protocol.on_link_result(*link, False, 1.1)
    protocol.on_link_result(*link, True, 1.2)
    protocol.on_link_result(*link, False, 1.3)
    protocol.on_link_result(*link, False, 1.4)
    assert IDS["S"] in protocol.cache
    protocol.on_link_result(*link, False, 1.5)
    assert IDS["S"] not in protocol.cache
    assert sim.counters.control_tx[ControlType.RERR] == 1


def test_factory_builds_every_protocol():
    for kind in ProtocolKind:
        sim = _figure_three_simulator(kind)
        assert sim.protocol.kind is kind
        assert sim.protocol.thermal_aware == (kind is ProtocolKind.PROPOSED)


def test_factory_rejects_unknown_keys():
    factory = ProtocolFactory()
    factory.register_builder("rrls", RrlsProtocol)
    with pytest.raises(ValueError):
        factory.build("olsr")


def test_recompute_only_revisits_affected_sources(monkeypatch):
    sim = _figure_three_simulator(ProtocolKind.PROPOSED)
    sim.run()
    protocol = sim.protocol
    protocol.recompute(10.0, "periodic")
    calls = []
    real = proposed_module.find_route

    def counting(src, *args, **kwargs):
        calls.append(src)
        return real(src, *args, **kwargs)

    monkeypatch.setattr(proposed_module, "find_route", counting)
    monkeypatch.setattr(nx.Graph, "copy", lambda self, *a, **k: pytest.fail("graph copied"))

    def routes_using(link):
        return {
            src for src in sim.sources
            if any(r is not None and link in r.links for r in protocol.monitor.routes_of(src))
        }

    protocol.recompute(10.0, "periodic")
    assert calls == []

    used = set().union(*(
        r.links for src in sim.sources for r in protocol.monitor.routes_of(src) if r is not None
    ))
    spare = next(link for link in protocol.graph.edges if link not in used)
    protocol.graph.edges[spare]["cost"] *= 2.0
    protocol.recompute(10.0, "periodic")
    assert calls == []

    primary, _ = protocol.monitor.routes_of(IDS["S"])
    link = primary.links[0]
    affected = routes_using(link)
    protocol.graph.edges[link]["cost"] *= 2.0
    protocol.recompute(10.0, "periodic")
    assert IDS["S"] in calls
    assert set(calls) <= affected

    calls.clear()
    protocol.graph.edges[spare]["cost"] *= 0.25
    protocol.recompute(10.0, "periodic")
    assert set(calls) == {src for src in sim.sources if sim.nodes[src].alive}
