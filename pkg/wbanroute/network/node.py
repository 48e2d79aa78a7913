from dataclasses import dataclass, field
from typing import Tuple

from wbanroute.utility import NodeRole
from wbanroute.utility.custom_types import NodeId


@dataclass
class NodeState:
    """Runtime record of one node.

    Args:
        id:
            the node id; sinks hold the highest ids
        position:
            2-D coordinates in meters
        role:
            sensor or sink
        energy_j:
            residual energy in joules. Sinks are never depleted
        temperature_c:
            current temperature in degrees Celsius
        initial_energy_j:
            the energy at the start of the run, used to normalise
            the residual energy
        asleep:
            whether the node is in hotspot sleep mode
        alive:
            ``False`` once a sensor's energy reached zero
        tx_bits_window, rx_bits_window:
            bits sent and received in the current thermal step
        radio_energy_window_j:
            radio energy spent in the current thermal step
        peak_temperature_c:
            the hottest temperature seen so far
    """

    id: NodeId
    position: Tuple[float, float]
    role: NodeRole
    energy_j: float
    temperature_c: float
    initial_energy_j: float = field(default=0.0)
    asleep: bool = False
    alive: bool = True
    tx_bits_window: int = 0
    rx_bits_window: int = 0
    radio_energy_window_j: float = 0.0
    peak_temperature_c: float = field(default=0.0)

    def __post_init__(self) -> None:
        if self.energy_j < 0:
            raise ValueError(f"Node {self.id} cannot start with negative energy")
        if not self.initial_energy_j:
            self.initial_energy_j = self.energy_j
        self.peak_temperature_c = max(self.peak_temperature_c, self.temperature_c)

    @property
    def is_sink(self) -> bool:
        return self.role is NodeRole.SINK

    @property
    def energy_fraction(self) -> float:
        """residual energy over initial energy, 1 for sinks"""
        if self.is_sink or self.initial_energy_j <= 0:
            return 1.0
        return self.energy_j / self.initial_energy_j

    def reset_window(self) -> None:
        self.tx_bits_window = 0
        self.rx_bits_window = 0
        self.radio_energy_window_j = 0.0
