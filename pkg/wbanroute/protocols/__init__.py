from .base import RoutingProtocol
from .proposed import ProposedProtocol
from .ensa_ban import EnsaBanProtocol, GradientNeighbor, ensa_ban_next_hop, hop_gradient
from .p_aodv import PAodvProtocol, p_aodv_route
from .rrls import RrlsProtocol, rrls_route, stability_graph
from .protocol_factory import ProtocolFactory, build_protocol

__all__ = [
    "RoutingProtocol",
    "ProposedProtocol",
    "EnsaBanProtocol",
    "GradientNeighbor",
    "ensa_ban_next_hop",
    "hop_gradient",
    "PAodvProtocol",
    "p_aodv_route",
    "RrlsProtocol",
    "rrls_route",
    "stability_graph",
    "ProtocolFactory",
    "build_protocol",
]
