from .node import NodeState
from .packet import Packet
from .scenario_config import (
    ScenarioConfig,
    load_scenario,
    load_scenario_file,
    dump_scenario,
    apply_overrides,
    validate,
    KEY_ALIASES,
)
from .topology import (
    Topology,
    build_topology,
    from_positions,
    ground_truth_prr,
    sink_positions,
    figure_three_topology,
    FIGURE_THREE_IDS,
)
from ._utils import ParseError, ValidationError, TopologyUnreachable, ScenarioWarning

__all__ = [
    "NodeState",
    "Packet",
    "ScenarioConfig",
    "load_scenario",
    "load_scenario_file",
    "dump_scenario",
    "apply_overrides",
    "validate",
    "KEY_ALIASES",
    "Topology",
    "build_topology",
    "from_positions",
    "ground_truth_prr",
    "sink_positions",
    "figure_three_topology",
    "FIGURE_THREE_IDS",
    "ParseError",
    "ValidationError",
    "TopologyUnreachable",
    "ScenarioWarning",
]
