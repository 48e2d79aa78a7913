from dataclasses import dataclass

from wbanroute.network import NodeState, ScenarioConfig
from wbanroute.utility import HotspotDecision


class UnstableStep(Exception):
    """Raised when the thermal step exceeds ``eta_c / omega`` and the
    explicit update would overshoot the body temperature"""

    pass


@dataclass(frozen=True)
class ThermalParams:
    """Lumped bioheat model of a single node.

    Args:
        eta_c:
            heat capacity of the node volume in J/degC
        omega:
            perfusion heat-transfer rate in W/degC
        t_body:
            baseline body temperature
        q_met:
            metabolic heat in W
        sar_coeff:
            watts of absorbed RF heat per joule of radio energy spent
            per second
        t_thresh:
            hotspot threshold
        hysteresis:
            re-admission margin below the threshold
        dt:
            integration step in seconds
    """

    eta_c: float
    omega: float
    t_body: float
    q_met: float
    sar_coeff: float
    t_thresh: float
    hysteresis: float
    dt: float

    def __post_init__(self) -> None:
        if self.eta_c <= 0:
            raise ValueError("eta_c must be strictly positive")
        if self.omega < 0:
            raise ValueError("omega must not be negative")
        if self.hysteresis <= 0 or self.dt <= 0:
            raise ValueError("hysteresis and dt must be strictly positive")
        if self.t_thresh <= self.t_body:
            raise ValueError("t_thresh must exceed t_body")

    @classmethod
    def from_config(cls, cfg: ScenarioConfig) -> "ThermalParams":
        return cls(
            eta_c=cfg.eta_c_product,
            omega=cfg.omega,
            t_body=cfg.t_body_c,
            q_met=cfg.q_met,
            sar_coeff=cfg.sar_coeff,
            t_thresh=cfg.t_thresh_c,
            hysteresis=cfg.hysteresis_c,
            dt=cfg.thermal_dt_s,
        )

    @property
    def max_stable_dt(self) -> float:
        return float("inf") if self.omega == 0 else self.eta_c / self.omega


def temperature_derivative(temperature: float, q_sar: float, tp: ThermalParams) -> float:
    """``dT/dt = (-omega (T - T_b) + Q_met + Q_SAR) / (eta C)``"""
    return (-tp.omega * (temperature - tp.t_body) + tp.q_met + q_sar) / tp.eta_c


def step_temperature(node: NodeState, radio_energy_j: float, tp: ThermalParams) -> float:
    """Advance the temperature of ``node`` by one explicit Euler
    step, with the absorbed heat proportional to the radio energy
    spent during the step. The result is clamped below at the body
    temperature. The node is not modified.

    Args:
        node:
            the node whose temperature is advanced
        radio_energy_j:
            joules of radio energy spent in this step
        tp:
            the thermal parameters

    Raises:
        UnstableStep:
            if ``tp.dt > eta_c / omega``
    """
    if tp.dt > tp.max_stable_dt:
        raise UnstableStep(
            f"Thermal step {tp.dt} s exceeds the stability bound {tp.max_stable_dt} s"
        )
    if radio_energy_j < 0:
        raise ValueError("Radio energy cannot be negative")
    q_sar = tp.sar_coeff * radio_energy_j / tp.dt
    updated = node.temperature_c + tp.dt * temperature_derivative(
        node.temperature_c, q_sar, tp
    )
    return max(updated, tp.t_body)


def steady_state_temperature(radio_power_w: float, tp: ThermalParams) -> float:
    """Equilibrium temperature under a constant radio power,
    ``T_b + (Q_met + Q_SAR) / omega``."""
    if tp.omega == 0:
        raise ValueError("Without perfusion there is no steady state")
    return tp.t_body + (tp.q_met + tp.sar_coeff * radio_power_w) / tp.omega


def classify_hotspot(node: NodeState, tp: ThermalParams) -> HotspotDecision:
    """Hysteresis rule: an awake node above the threshold goes to
    sleep, a sleeping node wakes once below ``t_thresh - hysteresis``."""
    if not node.asleep and node.temperature_c > tp.t_thresh:
        return HotspotDecision.ENTER_SLEEP
    if node.asleep and node.temperature_c < tp.t_thresh - tp.hysteresis:
        return HotspotDecision.WAKE
    return HotspotDecision.STAY
