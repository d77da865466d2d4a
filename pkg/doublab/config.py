"""Configuration management for doublab."""

import json
import os
import tomllib
from dataclasses import asdict, dataclass, field, fields
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any

import tomli_w
from platformdirs import user_config_dir, user_data_dir

from .errors import ConfigError

APP_NAME = "doublab"

# Environment variable overriding the default output directory
OUT_DIR_ENV = "DOUBLAB_OUT"

# Environment variable turning on per-mutation invariant checks of explicit trees
DEBUG_ENV = "DOUBLAB_DEBUG"

DEFAULT_NODE_CAP = 10**8


class EngineType(str, Enum):
    """Simulation engines selectable from the CLI."""

    EXPLICIT = "explicit"
    SIZE = "size"
    DEGREE = "degree"
    PROFILE = "profile"
    SKELETON = "skeleton"
    TAGGED = "tagged"
    CT = "ct"
    RRT = "rrt"
    EVERYWHERE = "everywhere"


class OracleKind(str, Enum):
    """Exact computations selectable from the CLI."""

    MOMENTS = "moments"
    SIZE = "size"
    STATISTIC = "statistic"
    ENUMERATE = "enumerate"
    FIXED_POINT = "fixed-point"
    INF_TREE = "inf-tree"


@dataclass
class CapSettings:
    """Upper limits on n for the exact oracles."""

    size_oracle: int = 24
    statistic_oracle: int = 10
    tagged_oracle: int = 5
    enumerate: int = 5
    inf_tree_oracle: int = 6


@dataclass
class LabSettings:
    """User-level settings, stored as TOML in the platform config dir."""

    node_cap: int = DEFAULT_NODE_CAP
    parallelism: int = 1
    out_dir: str | None = None  # None = platform data dir (or $DOUBLAB_OUT)
    ct_exact_cap: int = 20_000
    skeleton_log_switch: int = 300
    caps: CapSettings = field(default_factory=CapSettings)

    @classmethod
    def config_dir(cls) -> Path:
        """Get the config directory path."""
        return Path(user_config_dir(APP_NAME))

    @classmethod
    def config_path(cls) -> Path:
        """Get the config file path."""
        return cls.config_dir() / "config.toml"

    @classmethod
    def load(cls) -> "LabSettings":
        """Load settings from file, or return defaults."""
        config_path = cls.config_path()

        if not config_path.exists():
            return cls()

        try:
            with open(config_path, "rb") as f:
                data = tomllib.load(f)
        except Exception:
            return cls()

        general = data.get("general", {})
        caps_data = data.get("caps", {})
        caps = CapSettings(
            **{f.name: int(caps_data[f.name]) for f in fields(CapSettings) if f.name in caps_data}
        )

        return cls(
            node_cap=int(general.get("node_cap", DEFAULT_NODE_CAP)),
            parallelism=max(1, int(general.get("parallelism", 1))),
            out_dir=general.get("out_dir") or None,
            ct_exact_cap=int(general.get("ct_exact_cap", 20_000)),
            skeleton_log_switch=int(general.get("skeleton_log_switch", 300)),
            caps=caps,
        )

    def save(self) -> None:
        """Save settings to file."""
        config_path = self.config_path()
        config_path.parent.mkdir(parents=True, exist_ok=True)

        data = {
            "general": {
                "node_cap": self.node_cap,
                "parallelism": self.parallelism,
                "out_dir": self.out_dir or "",
                "ct_exact_cap": self.ct_exact_cap,
                "skeleton_log_switch": self.skeleton_log_switch,
            },
            "caps": asdict(self.caps),
        }

        with open(config_path, "wb") as f:
            tomli_w.dump(data, f)

    def default_out_dir(self) -> Path:
        """Output directory: $DOUBLAB_OUT, then the settings file, then the data dir."""
        env = os.environ.get(OUT_DIR_ENV)
        if env:
            return Path(env)
        if self.out_dir:
            return Path(self.out_dir)
        return Path(user_data_dir(APP_NAME)) / "runs"


# Singleton instance
_config: LabSettings | None = None


def get_config() -> LabSettings:
    """Get the singleton settings instance."""
    global _config
    if _config is None:
        _config = LabSettings.load()
    return _config


def debug_checks_enabled() -> bool:
    """True when $DOUBLAB_DEBUG is set and Python runs without -O."""
    return __debug__ and os.environ.get(DEBUG_ENV, "").lower() not in ("", "0", "false")


def reload_config() -> LabSettings:
    """Reload settings from file."""
    global _config
    _config = LabSettings.load()
    return _config


# ============================================================================
# Verification thresholds
# ============================================================================


def load_defaults() -> dict[str, dict[str, Any]]:
    """Read the packaged defaults file (sections keyed by verification name)."""
    text = resources.files(__package__).joinpath("defaults.toml").read_text("utf-8")
    data = tomllib.loads(text)
    data.pop("schema_version", None)
    return data


def defaults_version() -> int:
    text = resources.files(__package__).joinpath("defaults.toml").read_text("utf-8")
    return int(tomllib.loads(text)["schema_version"])


def resolve_thresholds(overrides: dict[str, Any] | None = None) -> dict[str, dict[str, Any]]:
    """Merge dotted overrides such as ``{"moments.rel_tol_2": 0.0}`` into the defaults."""
    merged = load_defaults()
    for dotted, value in (overrides or {}).items():
        section, _, key = dotted.partition(".")
        if section not in merged or key not in merged[section]:
            raise ConfigError(f"Unknown threshold: {dotted}")
        current = merged[section][key]
        if isinstance(current, bool) != isinstance(value, bool):
            raise ConfigError(f"Threshold {dotted} expects {type(current).__name__}")
        if isinstance(current, (int, float)) and not isinstance(value, (int, float)):
            raise ConfigError(f"Threshold {dotted} expects a number")
        merged[section][key] = value
    return merged


# ============================================================================
# Experiment configuration
# ============================================================================


@dataclass
class ExperimentConfig:
    """One experiment: what to run, how often, with which seed, and where to write."""

    seed: int
    experiment: str = "default"
    engine: EngineType = EngineType.SIZE
    n_values: list[int] = field(default_factory=lambda: [1000])
    replicates: int = 100
    k: int = 2
    m: int = 4
    k_max: int = 4
    attach: str = "tag"
    oracle: OracleKind = OracleKind.MOMENTS
    chain: str = "size"
    tests: list[str] = field(default_factory=lambda: ["all"])
    thresholds: dict[str, Any] = field(default_factory=dict)
    out_dir: Path | None = None
    parallelism: int = 1
    cap: int | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        if not self.n_values or any(int(n) <= 0 for n in self.n_values):
            raise ConfigError("n values must be positive")
        if self.replicates < 1:
            raise ConfigError("replicates must be at least 1")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be at least 1")
        if self.attach not in ("tag", "uniform"):
            raise ConfigError(f"Unknown attach mode: {self.attach}")
        if self.cap is not None and self.cap < 1:
            raise ConfigError("cap must be positive")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        """Build a config, rejecting unknown keys."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"Unknown config keys: {unknown}")
        if "seed" not in data:
            raise ConfigError("Config must set a seed")

        values = dict(data)
        try:
            if "engine" in values:
                values["engine"] = EngineType(values["engine"])
            if "oracle" in values:
                values["oracle"] = OracleKind(values["oracle"])
        except ValueError as e:
            raise ConfigError(str(e)) from e
        if values.get("out_dir") is not None:
            values["out_dir"] = Path(values["out_dir"])
        if "n_values" in values:
            values["n_values"] = [int(n) for n in values["n_values"]]
        if "tests" in values:
            values["tests"] = list(values["tests"])
        values["thresholds"] = dict(values.get("thresholds") or {})
        return cls(**values)

    def to_dict(self) -> dict[str, Any]:
        """Serialize to plain JSON-compatible values."""
        data = asdict(self)
        data["engine"] = self.engine.value
        data["oracle"] = self.oracle.value
        data["out_dir"] = str(self.out_dir) if self.out_dir is not None else None
        return data

    @classmethod
    def load(cls, path: Path) -> "ExperimentConfig":
        """Load from a .json or .toml file."""
        try:
            if path.suffix == ".toml":
                with open(path, "rb") as f:
                    data = tomllib.load(f)
            else:
                data = json.loads(path.read_text("utf-8"))
        except FileNotFoundError as e:
            raise ConfigError(f"Config file not found: {path}") from e
        except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
            raise ConfigError(f"Cannot parse {path}: {e}") from e
        return cls.from_dict(data)

    def save(self, path: Path) -> None:
        """Write as JSON, or TOML when the suffix says so."""
        path.parent.mkdir(parents=True, exist_ok=True)
        data = self.to_dict()
        if path.suffix == ".toml":
            with open(path, "wb") as f:
                tomli_w.dump({k: v for k, v in data.items() if v is not None}, f)
        else:
            path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", "utf-8")

    def resolved_out_dir(self) -> Path:
        base = self.out_dir if self.out_dir is not None else get_config().default_out_dir()
        return base / self.experiment
