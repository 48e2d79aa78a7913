from .bioheat import (
    ThermalParams,
    UnstableStep,
    step_temperature,
    steady_state_temperature,
    temperature_derivative,
    classify_hotspot,
)

__all__ = [
    "ThermalParams",
    "UnstableStep",
    "step_temperature",
    "steady_state_temperature",
    "temperature_derivative",
    "classify_hotspot",
]
