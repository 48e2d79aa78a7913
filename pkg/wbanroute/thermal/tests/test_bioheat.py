import dataclasses

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from wbanroute.network import NodeState, ScenarioConfig
from wbanroute.thermal import (
    ThermalParams,
    UnstableStep,
    step_temperature,
    steady_state_temperature,
    temperature_derivative,
    classify_hotspot,
)
from wbanroute.utility import NodeRole, HotspotDecision

TP = ThermalParams.from_config(ScenarioConfig())


def _node(temperature: float, asleep: bool = False) -> NodeState:
    node = NodeState(0, (0.0, 0.0), NodeRole.SENSOR, energy_j=100.0, temperature_c=temperature)
    node.asleep = asleep
    return node


def _integrate(temperature, power_w, tp, horizon_s, dt):
    """scalar explicit Euler reference with constant radio power"""
    q_sar = tp.sar_coeff * power_w
    for _ in range(int(round(horizon_s / dt))):
        temperature = temperature + dt * temperature_derivative(temperature, q_sar, tp)
    return temperature


def _random_params(rng):
    """parameter sets whose initial offset from the equilibrium keeps
    the unit-step discretisation error under 1e-3 degC over 10 s"""
    eta_c = rng.uniform(0.5, 2.0)
    rate = rng.uniform(1 / 200, 1 / 60)
    tp = ThermalParams(
        eta_c=eta_c,
        omega=eta_c * rate,
        t_body=37.0,
        q_met=rng.uniform(0.0, 0.005),
        sar_coeff=17.0,
        t_thresh=39.0,
        hysteresis=0.5,
        dt=1.0,
    )
    power = rng.uniform(0.0, 0.004)
    equilibrium = steady_state_temperature(power, tp)
    start = rng.uniform(max(tp.t_body, equilibrium - 0.7), equilibrium + 0.7)
    return tp, power, start


def test_equilibrium_without_sources():
    tp = dataclasses.replace(TP, q_met=0.0)
    assert step_temperature(_node(tp.t_body), 0.0, tp) == tp.t_body


def test_pure_decay_toward_body_temperature():
    updated = step_temperature(_node(TP.t_body + 1), 0.0, TP)
    assert TP.t_body < updated < TP.t_body + 1


def test_step_does_not_modify_node():
    node = _node(38.0)
    step_temperature(node, 1e-3, TP)
    assert node.temperature_c == 38.0


def test_heating_rate_of_sustained_relaying():
    # relaying 4 packets/s of 512 B costs about 1.97 mJ/s
    per_second = 8 * 4096 * 60e-9
    temperature = TP.t_body
    node = _node(temperature)
    for _ in range(30):
        node.temperature_c = step_temperature(node, per_second, TP)
    assert node.temperature_c - TP.t_body == pytest.approx(0.78, abs=0.1)


def test_matches_fine_step_reference():
    rng = np.random.default_rng(0)
    for _ in range(20):
        tp, power, start = _random_params(rng)
        node = _node(start)
        for _ in range(10):
            node.temperature_c = step_temperature(node, power * tp.dt, tp)
        reference = _integrate(start, power, tp, 10.0, tp.dt / 1000)
        assert abs(node.temperature_c - reference) < 1e-3


def test_matches_continuous_solution():
    rng = np.random.default_rng(1)
    for _ in range(20):
        tp, power, start = _random_params(rng)
        q_sar = tp.sar_coeff * power
        solution = solve_ivp(
            lambda t, y: [temperature_derivative(y[0], q_sar, tp)],
            (0.0, 10.0),
            [start],
            rtol=1e-10,
            atol=1e-12,
        )
        node = _node(start)
        for _ in range(10):
            node.temperature_c = step_temperature(node, power * tp.dt, tp)
        assert abs(node.temperature_c - solution.y[0, -1]) < 1e-3


def test_converges_to_steady_state():
    rng = np.random.default_rng(2)
    for _ in range(20):
        tp, power, start = _random_params(rng)
        node = _node(start)
        for _ in range(3000):
            node.temperature_c = step_temperature(node, power * tp.dt, tp)
        assert node.temperature_c == pytest.approx(
            steady_state_temperature(power, tp), abs=1e-3
        )


def test_never_below_body_temperature():
    node = _node(TP.t_body + 0.01)
    for _ in range(50):
        node.temperature_c = step_temperature(node, 0.0, TP)
        assert node.temperature_c >= TP.t_body


def test_sleeping_node_cools():
    tp = dataclasses.replace(TP, q_met=0.005)
    node = _node(39.5, asleep=True)
    floor = tp.t_body + tp.q_met / tp.omega
    previous = node.temperature_c
    for _ in range(100):
        node.temperature_c = step_temperature(node, 0.0, tp)
        if previous > floor:
            assert node.temperature_c <= previous
        previous = node.temperature_c


def test_unstable_step_is_rejected():
    tp = dataclasses.replace(TP, dt=TP.eta_c / TP.omega + 1)
    with pytest.raises(UnstableStep):
        step_temperature(_node(37.0), 0.0, tp)


def test_classify_hotspot():
    assert classify_hotspot(_node(TP.t_thresh + 0.1), TP) is HotspotDecision.ENTER_SLEEP
    assert classify_hotspot(_node(TP.t_thresh - 0.1), TP) is HotspotDecision.STAY
    inside_band = TP.t_thresh - TP.hysteresis / 2
    assert classify_hotspot(_node(inside_band, asleep=True), TP) is HotspotDecision.STAY
    below_band = TP.t_thresh - 2 * TP.hysteresis
    assert classify_hotspot(_node(below_band, asleep=True), TP) is HotspotDecision.WAKE
    assert classify_hotspot(_node(TP.t_thresh + 1, asleep=True), TP) is HotspotDecision.STAY


def test_invalid_params():
    with pytest.raises(ValueError):
        dataclasses.replace(TP, t_thresh=36.0)
    with pytest.raises(ValueError):
        dataclasses.replace(TP, eta_c=0.0)
