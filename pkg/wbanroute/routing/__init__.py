from .cost import CostWeights, CostNorms, link_cost, build_cost_graph
from .path_finder import (
    Route,
    NoRoute,
    find_route,
    path_cost,
    exclude_hotspots,
    default_sinks,
)
from .congestion import update_rci, congestion_threshold, CongestionMonitor
from .route_trace import RouteTrace, RouteRecord

__all__ = [
    "CostWeights",
    "CostNorms",
    "link_cost",
    "build_cost_graph",
    "Route",
    "NoRoute",
    "find_route",
    "path_cost",
    "exclude_hotspots",
    "default_sinks",
    "update_rci",
    "congestion_threshold",
    "CongestionMonitor",
    "RouteTrace",
    "RouteRecord",
]
