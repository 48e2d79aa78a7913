import math
from collections import defaultdict

import numpy as np
import pytest

from wbanroute.network import (
    FIGURE_THREE_IDS,
    ScenarioConfig,
    figure_three_topology,
    from_positions,
)
from wbanroute.routing import RouteTrace
from wbanroute.simulator import RunResult, Simulator, run
from wbanroute.utility import ControlType, ProtocolKind

IDS = FIGURE_THREE_IDS


def _figure_three_config(**overrides):
    values = dict(
        n_nodes=9,
        n_sinks=1,
        source_ids="0,4",
        rate_pkts_per_s=6.0,
        w1=0.1,
        w2=0.45,
        w3=0.45,
        w4=0.0,
        congestion_lambda=10.0,
        sim_time_s=100.0,
    )
    values.update(overrides)
    return ScenarioConfig(**values)


def _run_figure_three(**overrides):
    cfg = _figure_three_config(**overrides)
    sim = Simulator(cfg, topology=figure_three_topology(cfg), keep_events=True)
    return sim, sim.run()


def _two_node_run(protocol=ProtocolKind.PROPOSED):
    cfg = ScenarioConfig(
        n_nodes=1, n_sinks=1, rate_pkts_per_s=4.0, sim_time_s=10.0, protocol=protocol
    )
    topology = from_positions([(0.5, 0.5), (0.6, 0.5)], 1, cfg, prr_override=1.0)
    sim = Simulator(cfg, topology=topology, keep_events=True)
    return sim, sim.run()


def _distinct_routes(result, src):
    routes = []
    for record in RouteTrace.parse(result.route_trace):
        if record.src == src and (not routes or routes[-1] != record.hops):
            routes.append(record.hops)
    return routes


def _is_subsequence(needles, haystack):
    position = 0
    for item in haystack:
        if position < len(needles) and item == needles[position]:
            position += 1
    return position == len(needles)


def test_empty_run():
    result = run(ScenarioConfig(n_nodes=10, area_m=1.0, sim_time_s=0.0))
    assert result.metrics.originated == 0
    assert result.metrics.energy_consumed_j == 0.0
    assert result.metrics.throughput_kbps == 0.0
    assert result.metrics.mean_delay_ms is None


def test_two_node_run_originates_exactly_forty_packets():
    sim, result = _two_node_run()
    metrics = result.metrics
    assert metrics.originated == 40
    assert metrics.dropped == 0
    assert metrics.delivered + metrics.in_flight == 40
    assert metrics.delivered >= 39
    assert metrics.throughput_kbps == pytest.approx(metrics.delivered * 4096 / 10.0 / 1000.0)
    for record in sim.log.of_kind("deliver"):
        assert record["detail"]["hops"] == [0, 1]
        assert record["detail"]["delay"] >= sim.cfg.airtime_s


def test_two_node_run_under_every_protocol():
    for kind in ProtocolKind:
        _, result = _two_node_run(kind)
        assert result.metrics.originated == 40
        assert result.metrics.delivered >= 39


def test_identical_inputs_give_identical_results():
    def small(seed):
        return ScenarioConfig(n_nodes=12, area_m=1.0, rate_pkts_per_s=1.0, sim_time_s=20.0, rng_seed=seed)

    first = run(small(3))
    second = run(small(3))
    assert first.to_json() == second.to_json()
    other = run(small(4))
    assert other.to_json() != first.to_json()


def test_run_result_save_and_load(tmp_path):
    result = run(ScenarioConfig(n_nodes=6, area_m=1.0, sim_time_s=5.0))
    path = str(tmp_path / "run.json")
    result.save(path)
    loaded = RunResult.load(path)
    assert loaded.metrics == result.metrics
    assert loaded.event_count == result.event_count
    assert loaded.energy_ledger == result.energy_ledger


@pytest.mark.parametrize("kind", list(ProtocolKind))
@pytest.mark.parametrize("seed", range(1, 51))
def test_accounting_and_ledger_close_for_every_protocol(kind, seed):
    rng = np.random.default_rng(seed)
    n_nodes = int(rng.integers(10, 21))
    cfg = ScenarioConfig(
        n_nodes=n_nodes, area_m=1.0, rate_pkts_per_s=float(rng.choice([0.5, 1.0, 4.0])),
        sim_time_s=10.0, rng_seed=seed, protocol=kind,
    )
    result = run(cfg)
    metrics = result.metrics
    assert metrics.originated == metrics.delivered + metrics.dropped + metrics.in_flight
    assert 0 < metrics.energy_consumed_j <= n_nodes * cfg.initial_energy_j
    charged = math.fsum(result.energy_ledger.values())
    assert charged == pytest.approx(metrics.energy_consumed_j, rel=1e-9)


def test_energy_ledger_matches_consumption():
    result = run(ScenarioConfig(n_nodes=10, area_m=1.0, sim_time_s=10.0, rng_seed=5))
    charged = math.fsum(result.energy_ledger.values())
    assert charged == pytest.approx(result.metrics.energy_consumed_j, rel=1e-9)


def test_hops_are_causal_and_transmissions_never_overlap():
    cfg = ScenarioConfig(
        n_nodes=15, area_m=1.0, rate_pkts_per_s=2.0, sim_time_s=15.0, rng_seed=2,
        keep_packets=True,
    )
    sim = Simulator(cfg, keep_events=True)
    result = sim.run()
    for packet in result.packets:
        assert all(a < b for a, b in zip(packet.hop_times, packet.hop_times[1:]))
        if packet.delivered_at is not None:
            delay = packet.delivered_at - packet.created_at
            assert delay >= (len(packet.hops) - 1) * cfg.airtime_s - 1e-12
    intervals = sorted(
        (r["detail"]["start"], r["detail"]["end"]) for r in sim.log.of_kind("transmit")
    )
    assert intervals
    for (_, end), (start, _) in zip(intervals, intervals[1:]):
        assert start >= end - 1e-9


def test_figure_three_rerouting_sequence():
    _, result = _run_figure_three()
    routes = _distinct_routes(result, IDS["S"])
    expected = [tuple(IDS[x] for x in path) for path in ("SAED", "SABCD", "SFGHID")]
    assert routes[0] == expected[0]
    assert _is_subsequence(expected, routes)
    records = RouteTrace.parse(result.route_trace)
    first_detour = next(r for r in records if r.src == IDS["S"] and r.hops == expected[1])
    assert first_detour.trigger == "hotspot"
    assert result.metrics.hotspot_events >= 2


def test_no_sleeping_node_relays():
    sim, result = _run_figure_three()
    changes = defaultdict(list)
    for record in sim.log.records:
        if record["kind"] in ("sleep", "wake"):
            changes[record["node"]].append((record["time"], record["kind"] == "sleep"))

    def asleep(node, time_s):
        state = False
        for when, sleeping in changes[node]:
            if when < time_s:
                state = sleeping
        return state

    for record in sim.log.of_kind("transmit"):
        node = record["node"]
        if record["detail"]["src"] != node:
            assert not asleep(node, record["detail"]["at"])
    assert changes
    assert result.metrics.hotspot_events == sum(
        1 for record in sim.log.records if record["kind"] == "sleep"
    )


def test_baselines_never_sleep_and_run_hotter():
    proposed_peak = _run_figure_three()[1].metrics.max_temp_c
    for kind in (ProtocolKind.ENSA_BAN, ProtocolKind.P_AODV, ProtocolKind.RRLS):
        sim, result = _run_figure_three(protocol=kind)
        assert result.metrics.hotspot_events == 0
        assert not sim.log.of_kind("sleep")
        assert proposed_peak < result.metrics.max_temp_c


def test_hotspots_fire_on_a_random_topology():
    cfg = ScenarioConfig(
        n_nodes=20, area_m=1.0, rate_pkts_per_s=1.0, sim_time_s=60.0, sar_coeff=200.0, rng_seed=4,
    )
    sim = Simulator(cfg, keep_events=True)
    result = sim.run()
    assert result.metrics.hotspot_events > 0
    assert result.metrics.max_temp_c > cfg.t_thresh_c
    assert sim.counters.control_tx[ControlType.ROUTE_UPDATE] >= cfg.n_nodes
    assert {r["node"] for r in sim.log.of_kind("sleep")}
    assert result.metrics.originated == (
        result.metrics.delivered + result.metrics.dropped + result.metrics.in_flight
    )


def test_congestion_splits_traffic_over_two_routes():
    cfg = ScenarioConfig(
        n_nodes=3,
        n_sinks=1,
        source_ids="0",
        rate_pkts_per_s=4.0,
        congestion_lambda=1.5,
        sim_time_s=200.0,
        w1=0.0,
        t_thresh_c=45.0,
    )
    positions = [(0.2, 0.5), (0.55, 0.8), (0.55, 0.2), (0.9, 0.5)]
    topology = from_positions(positions, 1, cfg, prr_override=1.0)
    sim = Simulator(cfg, topology=topology, keep_events=True)
    sim.run()
    relayed = [r["node"] for r in sim.log.of_kind("transmit") if r["node"] in (1, 2)]
    share = relayed.count(1) / len(relayed)
    assert 0.4 <= share <= 0.6


def test_unknown_source_ids_are_rejected():
    from wbanroute.network import ValidationError

    cfg = _figure_three_config(source_ids="0,9")
    with pytest.raises(ValidationError):
        Simulator(cfg, topology=figure_three_topology(cfg))
