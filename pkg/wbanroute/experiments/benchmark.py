import logging
import multiprocessing
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd
from tqdm import tqdm

from wbanroute.metrics import MetricsReport, compare_runs
from wbanroute.network import ScenarioConfig, ScenarioWarning, Topology, figure_three_topology
from wbanroute.simulator import run
from wbanroute.utility import KnownWarningSilencer, ProtocolKind
from .sweep_config import SweepConfig

LOGGER = logging.getLogger(__name__)

FIXTURES: Dict[str, Callable[[ScenarioConfig], Topology]] = {
    "figure3": figure_three_topology,
}


def build_fixture(name: str, cfg: ScenarioConfig) -> Optional[Topology]:
    """the named fixed topology, ``None`` for random placement"""
    if not name:
        return None
    if name not in FIXTURES:
        raise ValueError(f"Unknown fixture {name}; available: {sorted(FIXTURES)}")
    return FIXTURES[name](cfg)


# this function is outside the main class to use multiprocessing
def unpacking_run(job: Tuple[ScenarioConfig, str]) -> MetricsReport:
    """Run one scenario given as a ``(cfg, fixture)`` tuple.

    This function is useful with ``multiprocessing.Pool().imap()``:
    it takes a single argument and can be imported from a module.
    """
    cfg, fixture = job
    with KnownWarningSilencer(ScenarioWarning):
        return run(cfg, topology=build_fixture(fixture, cfg)).metrics


class Benchmark:
    """Run every scenario of a sweep, in parallel when asked to.
    Runs share no state, so the reports are identical whatever the
    number of workers.

    Args:
        sweep:
            the grid of runs

    Examples::

        from wbanroute.experiments import Benchmark, SweepConfig
        from wbanroute.network import ScenarioConfig

        sweep = SweepConfig(ScenarioConfig(sim_time_s=60), seeds=[1, 2, 3],
                            n_nodes=[50, 100])
        reports = Benchmark(sweep).start(n_jobs=4)

    """

    def __init__(self, sweep: SweepConfig) -> None:
        self.sweep = sweep
        self.reports: List[MetricsReport] = []
        if not sweep.protocols:
            raise ValueError("The sweep needs at least one protocol")
        if not sweep.seeds:
            raise ValueError("The sweep needs at least one seed")

    def start(self, n_jobs: Optional[int] = None) -> List[MetricsReport]:
        """Execute the sweep.

        Args:
            n_jobs:
                number of worker processes; defaults to the number of
                cores, 1 runs serially in this process

        Returns:
            list:
                one report per scenario, in sweep order
        """
        jobs = [(cfg, self.sweep.fixture) for cfg in self.sweep.scenarios()]
        n_jobs = multiprocessing.cpu_count() if n_jobs is None else n_jobs
        n_processes = max(1, min(n_jobs, len(jobs)))
        LOGGER.info("Running %d scenarios with %d process(es)", len(jobs), n_processes)
        quiet = not self.sweep.progress
        if n_processes == 1:
            self.reports = [unpacking_run(job) for job in tqdm(jobs, disable=quiet)]
            return self.reports
        pool = multiprocessing.Pool(n_processes)
        try:
            self.reports = list(
                tqdm(pool.imap(unpacking_run, jobs), total=len(jobs), disable=quiet)
            )
        finally:
            # Freeing the workers:
            pool.close()
            pool.join()
        return self.reports

    def comparisons(self) -> Dict[Tuple[int, float], pd.DataFrame]:
        """one comparison table per swept node count and data rate,
        aggregated across seeds"""
        groups: Dict[Tuple[int, float], List[Tuple[ProtocolKind, MetricsReport]]] = {}
        for report in self.reports:
            key = (report.n_nodes, report.rate_pkts_per_s)
            groups.setdefault(key, []).append((ProtocolKind(report.protocol), report))
        return {key: compare_runs(pairs) for key, pairs in groups.items()}
