from .utils import (
    spawn_streams,
    parse_id_list,
    parse_float_list,
    clamp,
    KnownWarningSilencer,
    flatten_list_of_lists,
    RNG_STREAMS,
)
from .constants import (
    ROOT_DIR,
    DEFAULT_OUTPUT_DIR,
    PROTOCOL_ORDER,
    HIGHER_IS_BETTER,
    EVICTION_INTERVALS,
    COST_DECIMALS,
    DEFAULT_SWEEP_RATES,
    DEFAULT_SWEEP_NODES,
)
from .enum_types import (
    NodeRole,
    PacketClass,
    PacketKind,
    ControlType,
    EventKind,
    ProtocolKind,
    HotspotDecision,
    ReplayAction,
    DropCause,
    QueuePolicy,
    ReportFormat,
)

__all__ = [
    "spawn_streams",
    "parse_id_list",
    "parse_float_list",
    "clamp",
    "KnownWarningSilencer",
    "flatten_list_of_lists",
    "RNG_STREAMS",
    "ROOT_DIR",
    "DEFAULT_OUTPUT_DIR",
    "PROTOCOL_ORDER",
    "HIGHER_IS_BETTER",
    "EVICTION_INTERVALS",
    "COST_DECIMALS",
    "DEFAULT_SWEEP_RATES",
    "DEFAULT_SWEEP_NODES",
    "NodeRole",
    "PacketClass",
    "PacketKind",
    "ControlType",
    "EventKind",
    "ProtocolKind",
    "HotspotDecision",
    "ReplayAction",
    "DropCause",
    "QueuePolicy",
    "ReportFormat",
]
