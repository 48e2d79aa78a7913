from typing import TYPE_CHECKING, Any, Dict

from wbanroute.utility import ProtocolKind
from .base import RoutingProtocol
from .ensa_ban import EnsaBanProtocol
from .p_aodv import PAodvProtocol
from .proposed import ProposedProtocol
from .rrls import RrlsProtocol

if TYPE_CHECKING:
    from wbanroute.simulator import Simulator


class ProtocolFactory(object):
    """Protocol factory class using the factory design pattern

    Examples::

        factory = ProtocolFactory()
        factory.register_builder("rrls", RrlsProtocol)
        protocol = factory.build("rrls", simulator=simulator)

    """

    _builders: Dict[str, Any]

    def __init__(self) -> None:
        self._builders = {}

    def register_builder(self, key: str, builder: Any) -> None:
        """this method adds a protocol builder to the internal
        builders dictionary"""
        self._builders[key] = builder

    def build(self, key: str, **kwargs: Any) -> RoutingProtocol:
        """This method returns the protocol built by the builder
        registered under the input key.

        Args:
            key:
                the protocol tag
        """
        builder = self._builders.get(key)
        if builder is None:
            raise ValueError(f"No builder registered for key {key}")
        return builder(**kwargs)


def build_protocol(kind: ProtocolKind, simulator: "Simulator") -> RoutingProtocol:
    """Build the protocol selected by ``kind`` for ``simulator``"""
    factory = ProtocolFactory()
    factory.register_builder(ProtocolKind.PROPOSED.value, ProposedProtocol)
    factory.register_builder(ProtocolKind.ENSA_BAN.value, EnsaBanProtocol)
    factory.register_builder(ProtocolKind.P_AODV.value, PAodvProtocol)
    factory.register_builder(ProtocolKind.RRLS.value, RrlsProtocol)
    return factory.build(kind.value, simulator=simulator)
