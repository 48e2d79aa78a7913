from .sweep_config import SweepConfig
from .benchmark import Benchmark, FIXTURES, build_fixture, unpacking_run

__all__ = ["SweepConfig", "Benchmark", "FIXTURES", "build_fixture", "unpacking_run"]
