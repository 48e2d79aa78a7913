from .radio_model import EnergyParams, tx_energy, rx_energy, apply_energy_step

__all__ = [
    "EnergyParams",
    "tx_energy",
    "rx_energy",
    "apply_energy_step",
]
