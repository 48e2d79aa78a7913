import networkx as nx
import numpy as np
import pytest

from wbanroute.network import (
    ScenarioConfig,
    build_topology,
    from_positions,
    ground_truth_prr,
    figure_three_topology,
    FIGURE_THREE_IDS,
    TopologyUnreachable,
    Packet,
    NodeState,
)
from wbanroute.utility import spawn_streams, NodeRole


def test_link_within_range():
    cfg = ScenarioConfig(n_nodes=1, n_sinks=1)
    topology = from_positions([(0.0, 0.0), (0.0, 0.4)], 1, cfg)
    assert topology.has_link(0, 1)
    assert topology.neighbors(0) == [1]


def test_no_link_beyond_range():
    cfg = ScenarioConfig(n_nodes=1, n_sinks=1)
    topology = from_positions([(0.0, 0.0), (0.0, 0.6)], 1, cfg)
    assert not topology.has_link(0, 1)
    assert topology.unreachable_sensors() == {0}


def test_generated_topology_reaches_sinks():
    cfg = ScenarioConfig(n_nodes=50, area_m=3.0, range_m=0.5, rng_seed=1)
    streams = spawn_streams(cfg.rng_seed)
    topology = build_topology(cfg, streams["topology"], streams["prr"])
    graph = topology.to_graph()
    sinks = topology.sink_ids
    assert sinks == [50, 51]
    for sensor in topology.sensor_ids:
        assert any(nx.has_path(graph, sensor, sink) for sink in sinks)


def test_adjacency_is_symmetric_without_self_links():
    cfg = ScenarioConfig(n_nodes=30, area_m=2.0)
    streams = spawn_streams(3)
    topology = build_topology(cfg, streams["topology"], streams["prr"])
    assert np.array_equal(topology.adjacency, topology.adjacency.T)
    assert not np.any(np.diag(topology.adjacency))
    expected = (topology.distances <= cfg.range_m) & ~np.eye(topology.n, dtype=bool)
    assert np.array_equal(topology.adjacency, expected)
    for (i, j), prr in topology.prr_true.items():
        assert topology.prr_true[(j, i)] == prr
        assert 0.0 <= prr <= 1.0


def test_topology_is_deterministic():
    cfg = ScenarioConfig(n_nodes=40)
    first_streams = spawn_streams(11)
    second_streams = spawn_streams(11)
    first = build_topology(cfg, first_streams["topology"], first_streams["prr"])
    second = build_topology(cfg, second_streams["topology"], second_streams["prr"])
    assert [n.position for n in first.nodes] == [n.position for n in second.nodes]
    assert first.prr_true == second.prr_true


def test_sinks_take_the_highest_ids():
    cfg = ScenarioConfig(n_nodes=20, area_m=1.5)
    streams = spawn_streams(2)
    topology = build_topology(cfg, streams["topology"])
    roles = [node.role for node in topology.nodes]
    assert roles[-2:] == [NodeRole.SINK, NodeRole.SINK]
    assert all(role is NodeRole.SENSOR for role in roles[:-2])
    assert topology.nodes[-2].position == (0.0, 0.75)
    assert topology.nodes[-1].position == (1.5, 0.75)


def test_unreachable_density_raises():
    cfg = ScenarioConfig(n_nodes=5, area_m=3.0, range_m=0.05, topology_retries=5)
    streams = spawn_streams(1)
    with pytest.raises(TopologyUnreachable):
        build_topology(cfg, streams["topology"])


def test_ground_truth_prr_profile():
    assert ground_truth_prr(0.0, 0.5) == 1.0
    assert ground_truth_prr(0.5, 0.5) == pytest.approx(0.5)
    assert ground_truth_prr(0.25, 0.5) == pytest.approx(0.85)
    assert ground_truth_prr(0.3, 0.5) > ground_truth_prr(0.4, 0.5)


def test_figure_three_has_exactly_three_paths():
    cfg = ScenarioConfig(n_nodes=9, n_sinks=1)
    topology = figure_three_topology(cfg)
    ids = FIGURE_THREE_IDS
    graph = topology.to_graph()
    paths = {tuple(p) for p in nx.all_simple_paths(graph, ids["S"], ids["D"])}
    expected = {
        tuple(ids[x] for x in "SAED"),
        tuple(ids[x] for x in "SABCD"),
        tuple(ids[x] for x in "SFGHID"),
    }
    assert paths == expected
    assert topology.sink_ids == [ids["D"]]
    assert set(topology.prr_true.values()) == {1.0}


def test_packet_invariants():
    packet = Packet(seq=0, src=3, created_at=1.0, size_bits=4096)
    assert packet.hops == [3]
    packet.record_hop(5, 1.1, 1.2)
    assert packet.current_node == 5
    packet.mark_delivered(2.0)
    assert packet.delivered_at >= packet.created_at
    with pytest.raises(ValueError):
        Packet(seq=1, src=0, created_at=0.0, size_bits=0)
    with pytest.raises(ValueError):
        Packet(seq=2, src=0, created_at=0.0, size_bits=8, hops=[1])


def test_packet_follows_its_route():
    packet = Packet(seq=0, src=0, created_at=0.0, size_bits=8, route=[0, 1, 4])
    assert packet.next_on_route() == 1
    packet.record_hop(1, 0.1, 0.2)
    assert packet.next_on_route() == 4
    packet.record_hop(4, 0.3, 0.4)
    assert packet.next_on_route() is None


def test_node_state_energy_fraction():
    node = NodeState(0, (0.0, 0.0), NodeRole.SENSOR, energy_j=50.0, temperature_c=37.0,
                     initial_energy_j=100.0)
    assert node.energy_fraction == 0.5
    sink = NodeState(1, (0.0, 0.0), NodeRole.SINK, energy_j=100.0, temperature_c=37.0)
    assert sink.energy_fraction == 1.0
