from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from wbanroute.network import NodeState
from wbanroute.routing import Route
from wbanroute.thermal import ThermalParams
from wbanroute.utility import ReplayAction
from wbanroute.utility.custom_types import NodeId
from .transmit_queue import QueueEntry


class NoForwarder(Exception):
    """Raised when a hot node finds no awake neighbor with a sink
    route to divert to"""

    pass


@dataclass(frozen=True)
class NeighborCandidate:
    """What a node knows about one neighbor when it has to divert.
    Sinks count as having a sink route."""

    node: NodeId
    temperature_c: float
    link_cost: float
    has_sink_route: bool
    asleep: bool = False


@dataclass
class RouteState:
    """Routing information available to the replay rules at a node.

    Args:
        primary:
            the route the packet would follow
        second:
            the registered alternative, if any
        primary_demoted:
            whether the primary route is demoted for congestion
        candidates:
            the neighbors eligible for a thermal diversion
        now:
            the decision time
    """

    primary: Optional[Route] = None
    second: Optional[Route] = None
    primary_demoted: bool = False
    candidates: List[NeighborCandidate] = field(default_factory=list)
    now: float = 0.0


def select_stable_neighbor(candidates: Sequence[NeighborCandidate]) -> NodeId:
    """The coolest awake neighbor that has a sink route; ties go to
    the cheaper link, then the lower id.

    Raises:
        NoForwarder:
            if no candidate qualifies
    """
    eligible = [c for c in candidates if not c.asleep and c.has_sink_route]
    if not eligible:
        raise NoForwarder("No awake neighbor with a route to a sink")
    best = min(eligible, key=lambda c: (c.temperature_c, c.link_cost, c.node))
    return best.node


def adaptive_replay(
    entry: QueueEntry,
    node: NodeState,
    route_state: RouteState,
    tp: ThermalParams,
) -> ReplayAction:
    """Decide how the packet at the head of a queue leaves the node.

    Rules, first match wins: a node above the threshold diverts to
    a stable neighbor; a demoted primary route with an alternative
    diverts to the second route; a packet that waited its allowed
    delay at this node is forwarded immediately; otherwise the
    primary route is used.

    Raises:
        NoForwarder:
            when a diversion to a stable neighbor is required but no
            neighbor qualifies
    """
    if node.temperature_c > tp.t_thresh:
        select_stable_neighbor(route_state.candidates)
        return ReplayAction.DIVERT_TO_STABLE_NEIGHBOR
    if route_state.primary_demoted and route_state.second is not None:
        return ReplayAction.DIVERT_TO_SECOND_ROUTE
    if entry.is_aged(route_state.now):
        return ReplayAction.FORWARD_IMMEDIATELY
    return ReplayAction.SEND_PRIMARY
