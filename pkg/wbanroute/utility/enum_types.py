from enum import Enum, auto


class NodeRole(Enum):
    """
    The role of a node in the body area network.
    """

    SENSOR = auto()
    SINK = auto()


class PacketClass(Enum):
    """
    The traffic class of a data packet. The value is the
    priority ``P`` used by the waiting score.
    """

    NORMAL = 1
    ON_DEMAND = 2
    EMERGENCY = 3


class PacketKind(Enum):
    DATA = auto()
    CONTROL = auto()


class ControlType(Enum):
    """
    The type of a control transmission.
    """

    HELLO = auto()
    ROUTE_UPDATE = auto()
    RREQ = auto()
    RREP = auto()
    RERR = auto()
    LSA = auto()
    SINK_BEACON = auto()


class EventKind(Enum):
    """
    The kinds of events handled by the simulator.
    """

    PACKET_ORIGIN = "packet_origin"
    HELLO_TICK = "hello_tick"
    TDMA_FRAME = "tdma_frame"
    THERMAL_TICK = "thermal_tick"
    LINK_DELIVERY = "link_delivery"
    ROUTE_REFRESH = "route_refresh"
    SIM_END = "sim_end"


class ProtocolKind(Enum):
    """
    The routing protocol driving a run.
    """

    PROPOSED = "proposed"
    ENSA_BAN = "ensa_ban"
    P_AODV = "p_aodv"
    RRLS = "rrls"


class HotspotDecision(Enum):
    ENTER_SLEEP = auto()
    STAY = auto()
    WAKE = auto()


class ReplayAction(Enum):
    """
    The outcome of the adaptive replay rules for the packet at the
    head of a queue.
    """

    SEND_PRIMARY = auto()
    DIVERT_TO_STABLE_NEIGHBOR = auto()
    DIVERT_TO_SECOND_ROUTE = auto()
    FORWARD_IMMEDIATELY = auto()


class DropCause(Enum):
    """
    Why a data packet left the network without being delivered.
    """

    LINK_LOSS = "link_loss"
    MAX_AGE = "max_age"
    HOTSPOT = "hotspot"
    DEAD_NODE = "dead_node"
    NO_ROUTE = "no_route"
    HOP_LIMIT = "hop_limit"


class QueuePolicy(Enum):
    """
    The ordering of a transmit queue.
    """

    WAITING_SCORE = auto()
    CLASS_PRIORITY = auto()
    FIFO = auto()


class ReportFormat(Enum):
    TABLE = "table"
    SUMMARY = "summary"
    SERIES = "series"
