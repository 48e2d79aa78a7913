from ._version import __version__

from . import (
    utility,
    network,
    energy,
    thermal,
    link,
    routing,
    scheduler,
    metrics,
    protocols,
    simulator,
    experiments,
    cli,
)

__all__ = [
    "utility",
    "network",
    "energy",
    "thermal",
    "link",
    "routing",
    "scheduler",
    "metrics",
    "protocols",
    "simulator",
    "experiments",
    "cli",
]
