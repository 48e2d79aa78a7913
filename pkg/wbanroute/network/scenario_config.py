import dataclasses
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple
import warnings

from wbanroute.utility import ProtocolKind, parse_id_list
from ._utils import ParseError, ScenarioWarning, ValidationError


@dataclass
class ScenarioConfig:
    """Full description of one experiment. Unspecified fields take
    the defaults of the reference simulation setup (3 m x 3 m area,
    50 cm range, 2 sinks, 100 J, 512 B packets at 4 packets/s for
    500 s).

    Args:
        n_nodes:
            number of sensors
        n_sinks:
            number of sinks, placed at opposite mid-edges
        area_m:
            side of the square simulation area
        range_m:
            transmission range
        initial_energy_j:
            initial sensor energy
        e_elec_j_per_bit, e_amp_j_per_bit_per_m4, path_loss_exponent:
            first-order radio model constants
        packet_size_bytes:
            data payload size
        rate_pkts_per_s:
            constant bit rate of every originating sensor
        sim_time_s:
            simulated duration; 0 gives an empty run
        bandwidth_hz:
            nominal channel bandwidth, echoed in reports only
        rng_seed:
            master seed of every random stream
        w1, w2, w3, w4:
            route cost weights for temperature, inverse PRR, inverse
            energy and delay
        t_thresh_c, hysteresis_c:
            hotspot threshold and re-admission margin
        ewma_alpha:
            smoothing factor of the one-hop delay estimate
        congestion_lambda:
            multiplier of the mean congestion index (``lambda`` in
            scenario files)
        hello_interval_s:
            HELLO beacon period
        eta_c_product, omega, t_body_c, q_met, sar_coeff, thermal_dt_s:
            lumped bioheat model parameters
        protocol:
            the routing protocol of the run
    """

    n_nodes: int = 50
    n_sinks: int = 2
    area_m: float = 3.0
    range_m: float = 0.5
    initial_energy_j: float = 100.0
    e_elec_j_per_bit: float = 60e-9
    e_amp_j_per_bit_per_m4: float = 1e-15
    path_loss_exponent: int = 4
    packet_size_bytes: int = 512
    rate_pkts_per_s: float = 4.0
    sim_time_s: float = 500.0
    bandwidth_hz: float = 20e6
    rng_seed: int = 1
    w1: float = 0.3
    w2: float = 0.3
    w3: float = 0.2
    w4: float = 0.2
    t_thresh_c: float = 39.0
    hysteresis_c: float = 0.5
    ewma_alpha: float = 0.3
    congestion_lambda: float = 1.5
    hello_interval_s: float = 1.0
    eta_c_product: float = 1.0
    omega: float = 1.0 / 60.0
    t_body_c: float = 37.0
    q_met: float = 0.0
    sar_coeff: float = 17.0
    thermal_dt_s: float = 1.0
    protocol: ProtocolKind = ProtocolKind.PROPOSED
    link_rate_bps: float = 250000.0
    hello_size_bytes: int = 32
    prr_window: int = 20
    prr_min: float = 0.5
    prr_jitter: float = 0.05
    tdma_frame_s: float = 0.1
    max_age_s: float = 5.0
    hop_limit: int = 32
    congestion_tau_s: float = 10.0
    demotion_factor: float = 4.0
    route_refresh_s: float = 5.0
    cost_change_ratio: float = 0.1
    d_ref_s: float = 0.1
    raw_cost_units: bool = False
    frac_on_demand: float = 0.15
    frac_emergency: float = 0.05
    delay_budget_emergency_s: float = 0.05
    delay_budget_on_demand_s: float = 0.25
    delay_budget_normal_s: float = 1.0
    critical_energy_fraction: float = 0.05
    topology_retries: int = 1000
    aodv_break_threshold: int = 3
    lsa_interval_s: float = 5.0
    gradient_interval_s: float = 5.0
    source_ids: str = ""
    event_log: str = ""
    route_trace: str = ""
    keep_packets: bool = False

    def to_dict(self) -> Dict[str, Any]:
        """method to transform the config file into a dictionary"""
        dictionary = {k: v for k, v in self.__dict__.items() if not k.startswith("_")}
        dictionary["protocol"] = self.protocol.value
        return dictionary

    @property
    def packet_size_bits(self) -> int:
        return self.packet_size_bytes * 8

    @property
    def hello_size_bits(self) -> int:
        return self.hello_size_bytes * 8

    @property
    def airtime_s(self) -> float:
        """time one data packet occupies the shared medium"""
        return self.packet_size_bits / self.link_rate_bps

    def sources(self) -> Optional[List[int]]:
        """the explicitly configured originating sensors, or ``None``
        when every sensor originates"""
        if not self.source_ids.strip():
            return None
        return parse_id_list(self.source_ids)


KEY_ALIASES = {"lambda": "congestion_lambda"}

_FIELDS = {f.name: f for f in dataclasses.fields(ScenarioConfig)}

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_int(text: str) -> int:
    value = float(text)
    if not value.is_integer():
        raise ValueError(f"expected an integer, got {text!r}")
    return int(value)


_PARSERS: Dict[Any, Callable[[str], Any]] = {
    int: _parse_int,
    float: float,
    bool: _parse_bool,
    str: str,
    ProtocolKind: ProtocolKind,
}


def _parse_value(key: str, raw: str, line: Optional[int] = None) -> Tuple[str, Any]:
    name = KEY_ALIASES.get(key, key)
    if name not in _FIELDS:
        raise ParseError(f"unknown scenario key {key!r}", line=line, field=key)
    field_type = _FIELDS[name].type
    if raw == "" and field_type is not str:
        raise ParseError("missing value", line=line, field=name)
    try:
        return name, _PARSERS[field_type](raw)
    except ValueError as error:
        raise ParseError(str(error), line=line, field=name) from error


def _split_assignment(text: str, line: Optional[int] = None) -> Tuple[str, str]:
    if "=" not in text:
        raise ParseError(f"expected 'key = value', got {text!r}", line=line)
    key, raw = text.split("=", 1)
    key = key.strip()
    if not key:
        raise ParseError("empty key", line=line)
    return key, raw.strip()


def load_scenario(text: str) -> ScenarioConfig:
    """Parse a flat ``key = value`` scenario document into a
    validated config. Blank lines and ``#`` comments are ignored;
    later assignments of the same key win.

    Args:
        text:
            the scenario document

    Raises:
        ParseError:
            on malformed lines, unknown keys or unparsable values
        ValidationError:
            when the resulting config violates an invariant
    """
    cfg = ScenarioConfig(**_parse_document(text))
    validate(cfg)
    return cfg


def _parse_document(text: str) -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        key, raw = _split_assignment(content, number)
        name, value = _parse_value(key, raw, number)
        values[name] = value
    return values


def _parse_overrides(overrides: Iterable[str]) -> Dict[str, Any]:
    changes: Dict[str, Any] = {}
    for assignment in overrides:
        key, raw = _split_assignment(assignment)
        name, value = _parse_value(key, raw)
        changes[name] = value
    return changes


def load_scenario_file(path: str, overrides: Iterable[str] = ()) -> ScenarioConfig:
    """Read a scenario file, then apply ``key=value`` overrides
    before validation"""
    with open(path, "r") as infile:
        values = _parse_document(infile.read())
    values.update(_parse_overrides(overrides))
    cfg = ScenarioConfig(**values)
    validate(cfg)
    return cfg


def apply_overrides(cfg: ScenarioConfig, overrides: Iterable[str]) -> ScenarioConfig:
    """Return a copy of ``cfg`` with the ``key=value`` overrides
    applied and validated"""
    updated = dataclasses.replace(cfg, **_parse_overrides(overrides))
    validate(updated)
    return updated


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, ProtocolKind):
        return value.value
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_scenario(cfg: ScenarioConfig) -> str:
    """Serialise a config in the scenario file format, one key per
    line in field order"""
    lines = ["# wban-route scenario"]
    for name in _FIELDS:
        lines.append(f"{name} = {_format_value(getattr(cfg, name))}")
    return "\n".join(lines) + "\n"


def _require(condition: bool, field: str, message: str) -> None:
    if not condition:
        raise ValidationError(message, field=field)


def validate(cfg: ScenarioConfig) -> None:
    """Check every invariant of a scenario.

    Raises:
        ValidationError:
            naming the first violated field
    """
    for name in (
        "area_m",
        "range_m",
        "initial_energy_j",
        "e_elec_j_per_bit",
        "e_amp_j_per_bit_per_m4",
        "rate_pkts_per_s",
        "bandwidth_hz",
        "hello_interval_s",
        "eta_c_product",
        "thermal_dt_s",
        "link_rate_bps",
        "tdma_frame_s",
        "max_age_s",
        "congestion_tau_s",
        "route_refresh_s",
        "d_ref_s",
        "delay_budget_emergency_s",
        "delay_budget_on_demand_s",
        "delay_budget_normal_s",
        "lsa_interval_s",
        "gradient_interval_s",
    ):
        _require(getattr(cfg, name) > 0, name, "must be strictly positive")
    for name in (
        "n_nodes",
        "n_sinks",
        "packet_size_bytes",
        "hello_size_bytes",
        "prr_window",
        "hop_limit",
        "topology_retries",
        "aodv_break_threshold",
    ):
        _require(getattr(cfg, name) >= 1, name, "must be at least 1")
    _require(cfg.sim_time_s >= 0, "sim_time_s", "must not be negative")
    _require(cfg.omega >= 0, "omega", "must not be negative")
    _require(cfg.q_met >= 0, "q_met", "must not be negative")
    _require(cfg.sar_coeff >= 0, "sar_coeff", "must not be negative")
    _require(cfg.hysteresis_c > 0, "hysteresis_c", "must be strictly positive")
    _require(cfg.t_thresh_c > cfg.t_body_c, "t_thresh_c", "must exceed t_body_c")
    weights = (cfg.w1, cfg.w2, cfg.w3, cfg.w4)
    _require(all(w >= 0 for w in weights), "w1..w4", "weights must be non-negative")
    _require(any(w > 0 for w in weights), "w1..w4", "weights must not all be zero")
    _require(0 < cfg.ewma_alpha < 1, "ewma_alpha", "must satisfy 0 < alpha < 1")
    _require(cfg.congestion_lambda > 1, "congestion_lambda", "must exceed 1")
    _require(cfg.path_loss_exponent in (2, 4), "path_loss_exponent", "must be 2 or 4")
    _require(cfg.demotion_factor >= 1, "demotion_factor", "must be at least 1")
    _require(cfg.cost_change_ratio >= 0, "cost_change_ratio", "must not be negative")
    _require(0 <= cfg.prr_min <= 1, "prr_min", "must lie in [0, 1]")
    _require(0 <= cfg.prr_jitter <= 1, "prr_jitter", "must lie in [0, 1]")
    _require(
        0 <= cfg.critical_energy_fraction < 1,
        "critical_energy_fraction",
        "must lie in [0, 1)",
    )
    _require(
        cfg.frac_on_demand >= 0
        and cfg.frac_emergency >= 0
        and cfg.frac_on_demand + cfg.frac_emergency <= 1,
        "frac_on_demand",
        "class fractions must be non-negative and sum to at most 1",
    )
    if cfg.omega > 0:
        _require(
            cfg.thermal_dt_s <= cfg.eta_c_product / cfg.omega,
            "thermal_dt_s",
            "must not exceed eta_c_product / omega (unstable explicit step)",
        )
    try:
        sources = cfg.sources()
    except ValueError as error:
        raise ValidationError(str(error), field="source_ids") from error
    if sources is not None:
        _require(
            all(0 <= s < cfg.n_nodes for s in sources),
            "source_ids",
            "sources must be sensor ids",
        )
    if cfg.tdma_frame_s < cfg.airtime_s:
        warnings.warn(
            "The TDMA frame is shorter than one data airtime; every frame will stretch",
            ScenarioWarning,
        )
