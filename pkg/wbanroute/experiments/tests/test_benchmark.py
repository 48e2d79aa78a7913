import pytest

from wbanroute.experiments import Benchmark, SweepConfig, build_fixture
from wbanroute.metrics import directional_claims
from wbanroute.network import ScenarioConfig
from wbanroute.utility import ProtocolKind


def _figure_three_sweep(**kwargs):
    base = ScenarioConfig(n_nodes=9, n_sinks=1, source_ids="0,4", sim_time_s=5.0)
    return SweepConfig(base, fixture="figure3", **kwargs)


def test_scenarios_follow_the_fixed_order():
    sweep = SweepConfig(
        ScenarioConfig(),
        protocols=[ProtocolKind.RRLS, ProtocolKind.PROPOSED],
        seeds=[2, 1],
        n_nodes=[100, 50],
        rates=[4.0],
    )
    keys = [(c.protocol, c.n_nodes, c.rng_seed) for c in sweep.scenarios()]
    assert keys == [
        (ProtocolKind.PROPOSED, 50, 1),
        (ProtocolKind.PROPOSED, 50, 2),
        (ProtocolKind.PROPOSED, 100, 1),
        (ProtocolKind.PROPOSED, 100, 2),
        (ProtocolKind.RRLS, 50, 1),
        (ProtocolKind.RRLS, 50, 2),
        (ProtocolKind.RRLS, 100, 1),
        (ProtocolKind.RRLS, 100, 2),
    ]
    assert sweep.base.protocol is ProtocolKind.PROPOSED


def test_sweep_to_dict():
    dictionary = SweepConfig(rates=[1.0, 2.0]).to_dict()
    assert dictionary["protocols"] == ["proposed", "ensa_ban", "p_aodv", "rrls"]
    assert dictionary["base"]["n_nodes"] == 50
    assert dictionary["rates"] == [1.0, 2.0]


def test_unknown_fixture():
    with pytest.raises(ValueError):
        build_fixture("figure9", ScenarioConfig())
    assert build_fixture("", ScenarioConfig()) is None


def test_empty_sweeps_are_rejected():
    with pytest.raises(ValueError):
        Benchmark(SweepConfig(protocols=[]))
    with pytest.raises(ValueError):
        Benchmark(SweepConfig(seeds=[]))


def test_parallel_and_serial_sweeps_agree():
    serial = Benchmark(_figure_three_sweep(seeds=[1, 2])).start(n_jobs=1)
    parallel = Benchmark(_figure_three_sweep(seeds=[1, 2])).start(n_jobs=2)
    assert len(serial) == 8
    assert serial == parallel
    assert [r.protocol for r in serial[::2]] == ["proposed", "ensa_ban", "p_aodv", "rrls"]


def test_comparisons_per_grid_point():
    bench = Benchmark(_figure_three_sweep(rates=[2.0, 4.0]))
    bench.start(n_jobs=1)
    tables = bench.comparisons()
    assert sorted(tables) == [(9, 2.0), (9, 4.0)]
    table = tables[(9, 4.0)]
    assert set(table.baseline) == {"ensa_ban", "p_aodv", "rrls", "best"}
    assert len(table) == 16


@pytest.mark.slow
@pytest.mark.parametrize("n_nodes", [50, 100])
def test_directional_claims_at_desk_scale(n_nodes):
    bench = Benchmark(SweepConfig(ScenarioConfig(), seeds=[1, 2, 3, 4, 5], n_nodes=[n_nodes]))
    bench.start()
    claims = directional_claims(bench.comparisons()[(n_nodes, 4.0)])
    assert claims == {
        "throughput_kbps": True,
        "mean_delay_ms": True,
        "energy_consumed_j": True,
        "nrl": True,
    }
