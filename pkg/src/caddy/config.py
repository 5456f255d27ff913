"""Session configuration: one JSON file, unknown keys rejected."""

import json
from dataclasses import dataclass, field

from .channel import DebounceConfig
from .sim import SimConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class NoiseConfig:
    error_rate: float = 0.0
    dropout_p: float = 0.02


@dataclass(frozen=True)
class ServerConfig:
    port: int = 8000


@dataclass(frozen=True)
class SessionConfig:
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    debounce: DebounceConfig = field(default_factory=DebounceConfig)
    sim: SimConfig = field(default_factory=SimConfig)
    server: ServerConfig = field(default_factory=ServerConfig)
    seed: int = 0


_SCHEMA = {
    "noise": {"error_rate", "dropout_p"},
    "debounce": {"window_n", "min_confidence", "require_gap"},
    "sim": {
        "speed_mps",
        "dt_s",
        "arrival_tol_m",
        "lane_spacing_m",
        "seafloor_depth_m",
        "boat_pose",
        "equipment_pose",
    },
    "server": {"port"},
    "seed": None,
}


def _reject_unknown(doc):
    for key, value in doc.items():
        if key not in _SCHEMA:
            raise ConfigError(f"unknown config key: {key}")
        allowed = _SCHEMA[key]
        if allowed is None:
            continue
        if not isinstance(value, dict):
            raise ConfigError(f"config key {key} must be an object")
        for sub in value:
            if sub not in allowed:
                raise ConfigError(f"unknown config key: {key}.{sub}")


def _positive(section, key, value):
    if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
        raise ConfigError(f"{section}.{key} must be a positive number, got {value!r}")
    return float(value)


def _probability(section, key, value):
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not 0 <= value <= 1:
        raise ConfigError(f"{section}.{key} must be in [0, 1], got {value!r}")
    return float(value)


def _pose(section, key, value):
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 3
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise ConfigError(f"{section}.{key} must be [x_m, y_m, z_m], got {value!r}")
    if value[2] < 0:
        raise ConfigError(f"{section}.{key} depth must be >= 0")
    return tuple(float(v) for v in value)


def parse_config(doc: dict) -> SessionConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config root must be an object")
    _reject_unknown(doc)

    noise_doc = doc.get("noise", {})
    noise = NoiseConfig(
        error_rate=_probability("noise", "error_rate", noise_doc.get("error_rate", 0.0)),
        dropout_p=_probability("noise", "dropout_p", noise_doc.get("dropout_p", 0.02)),
    )

    deb_doc = doc.get("debounce", {})
    window_n = deb_doc.get("window_n", 5)
    if not isinstance(window_n, int) or isinstance(window_n, bool) or window_n < 1:
        raise ConfigError(f"debounce.window_n must be a positive integer, got {window_n!r}")
    require_gap = deb_doc.get("require_gap", True)
    if not isinstance(require_gap, bool):
        raise ConfigError(f"debounce.require_gap must be a boolean, got {require_gap!r}")
    debounce = DebounceConfig(
        window_n=window_n,
        min_confidence=_probability(
            "debounce", "min_confidence", deb_doc.get("min_confidence", 0.6)
        ),
        require_gap=require_gap,
    )

    sim_doc = doc.get("sim", {})
    seafloor = sim_doc.get("seafloor_depth_m", 10.0)
    if not isinstance(seafloor, (int, float)) or isinstance(seafloor, bool) or seafloor < 0:
        raise ConfigError(f"sim.seafloor_depth_m must be >= 0, got {seafloor!r}")
    sim = SimConfig(
        speed_mps=_positive("sim", "speed_mps", sim_doc.get("speed_mps", 0.5)),
        dt_s=_positive("sim", "dt_s", sim_doc.get("dt_s", 0.1)),
        arrival_tol_m=_positive("sim", "arrival_tol_m", sim_doc.get("arrival_tol_m", 0.05)),
        lane_spacing_m=_positive("sim", "lane_spacing_m", sim_doc.get("lane_spacing_m", 2.0)),
        seafloor_depth_m=float(seafloor),
        boat_pose=_pose("sim", "boat_pose", sim_doc.get("boat_pose", (0.0, 0.0, 0.0))),
        equipment_pose=_pose(
            "sim", "equipment_pose", sim_doc.get("equipment_pose", (5.0, 5.0, 2.0))
        ),
    )

    server_doc = doc.get("server", {})
    port = server_doc.get("port", 8000)
    if not isinstance(port, int) or isinstance(port, bool) or not 0 < port < 65536:
        raise ConfigError(f"server.port must be a port number, got {port!r}")

    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError(f"seed must be an integer, got {seed!r}")

    return SessionConfig(
        noise=noise,
        debounce=debounce,
        sim=sim,
        server=ServerConfig(port=port),
        seed=seed,
    )


def load_config(path) -> SessionConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return parse_config(doc)
