from dataclasses import dataclass
from typing import Iterable, Tuple, Union

from wbanroute.network import NodeState, ScenarioConfig


@dataclass(frozen=True)
class EnergyParams:
    """First-order radio model constants.

    Args:
        e_elec:
            electronics energy, joules per bit
        e_amp:
            amplifier energy, joules per bit per meter to the ``m``
        m:
            path-loss exponent, 2 or 4
    """

    e_elec: float
    e_amp: float
    m: int = 4

    def __post_init__(self) -> None:
        if self.e_elec <= 0 or self.e_amp <= 0:
            raise ValueError("Radio energy constants must be strictly positive")
        if self.m not in (2, 4):
            raise ValueError(f"Path-loss exponent must be 2 or 4, got {self.m}")

    @classmethod
    def from_config(cls, cfg: ScenarioConfig) -> "EnergyParams":
        return cls(cfg.e_elec_j_per_bit, cfg.e_amp_j_per_bit_per_m4, cfg.path_loss_exponent)


def tx_energy(k: int, d: float, p: EnergyParams) -> float:
    """Energy to transmit ``k`` bits over ``d`` meters,
    ``E_elec k + E_amp k d^m``."""
    return p.e_elec * k + p.e_amp * k * d ** p.m


def rx_energy(k: int, p: EnergyParams) -> float:
    """Energy to receive ``k`` bits, ``E_elec k``."""
    return p.e_elec * k


def apply_energy_step(
    node: NodeState,
    tx_bits: Union[int, Iterable[Tuple[int, float]]],
    rx_bits: int,
    p: EnergyParams,
) -> float:
    """Charge one step of radio activity to ``node``.

    Sensor energy decreases by the sum of the transmit and receive
    energies, floored at zero; a sensor reaching zero is marked dead.
    Sinks are never charged. The node's thermal-step window counters
    are updated with the energy actually removed.

    Args:
        node:
            the node to charge, updated in place
        tx_bits:
            the transmissions of the step as ``(bits, meters)``
            pairs; a plain bit count is a zero-distance transmission
        rx_bits:
            total bits received in the step
        p:
            the radio constants

    Returns:
        float:
            the energy actually removed from the node, in joules
    """
    if node.energy_j < 0:
        raise ValueError(f"Node {node.id} has negative energy")
    transmissions = [(tx_bits, 0.0)] if isinstance(tx_bits, int) else list(tx_bits)
    sent = sum(bits for bits, _ in transmissions)
    node.tx_bits_window += sent
    node.rx_bits_window += rx_bits
    if node.is_sink or not node.alive:
        return 0.0
    demand = sum(tx_energy(bits, d, p) for bits, d in transmissions if bits > 0)
    if rx_bits > 0:
        demand += rx_energy(rx_bits, p)
    charged = min(demand, node.energy_j)
    node.energy_j -= charged
    if node.energy_j <= 0.0:
        node.energy_j = 0.0
        node.alive = False
    node.radio_energy_window_j += charged
    return charged
