"""
Toolkit Configuration
=====================
⚙️  config/toolkit_config.yaml -> ToolkitConfig
🌱 .env overrides (MAHAVIER_CONFIG, MAHAVIER_LOG_LEVEL, MAHAVIER_LOG_FILE,
   MAHAVIER_MAX_WORKERS, MAHAVIER_RASTER_STEP)
📝 setup_logging: basicConfig with a stream handler and an optional log file
"""

import logging
import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml
from dotenv import load_dotenv

from core.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent.parent / "config" / "toolkit_config.yaml"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


@dataclass(frozen=True)
class LoggingConfig:
    level: str = "INFO"
    file: Optional[str] = None
    format: str = LOG_FORMAT


@dataclass(frozen=True)
class GeometryConfig:
    lp_redundancy_pruning: bool = False


@dataclass(frozen=True)
class MahavierConfig:
    max_workers: int = 4
    parallel_threshold: int = 64


@dataclass(frozen=True)
class RasterConfig:
    step_denominator: int = 64
    max_dim: int = 4
    comparison_slack: int = 2


@dataclass(frozen=True)
class RenderConfig:
    size: int = 400
    margin: int = 20
    precision: int = 4
    graph_color: str = "#1f4e79"
    cell_color: str = "#d9822b"
    cell_opacity: str = "0.35"
    frame_color: str = "#999999"


@dataclass(frozen=True)
class CliConfig:
    default_max_n: int = 5


@dataclass(frozen=True)
class ToolkitConfig:
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    mahavier: MahavierConfig = field(default_factory=MahavierConfig)
    raster: RasterConfig = field(default_factory=RasterConfig)
    render: RenderConfig = field(default_factory=RenderConfig)
    cli: CliConfig = field(default_factory=CliConfig)
    source: Optional[str] = None


SECTIONS: Dict[str, type] = {
    "logging": LoggingConfig,
    "geometry": GeometryConfig,
    "mahavier": MahavierConfig,
    "raster": RasterConfig,
    "render": RenderConfig,
    "cli": CliConfig,
}


def _section(name: str, cls: type, values: Any):
    if values is None:
        return cls()
    if not isinstance(values, dict):
        raise ConfigError(f"❌ Config section '{name}' must be a mapping")
    known = set(cls.__dataclass_fields__)
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"❌ Unknown keys in config section '{name}': {unknown}")
    defaults = cls()
    typed = {}
    for key, value in values.items():
        expected = type(getattr(defaults, key))
        if getattr(defaults, key) is None or isinstance(value, expected) or value is None:
            typed[key] = value
        else:
            raise ConfigError(f"❌ Config key {name}.{key} should be {expected.__name__}, got {value!r}")
    return cls(**typed)


def config_from_mapping(document: Dict[str, Any], source: Optional[str] = None) -> ToolkitConfig:
    unknown = sorted(set(document) - set(SECTIONS))
    if unknown:
        raise ConfigError(f"❌ Unknown config sections: {unknown}")
    sections = {name: _section(name, cls, document.get(name)) for name, cls in SECTIONS.items()}
    return ToolkitConfig(source=source, **sections)


def _env_int(name: str) -> Optional[int]:
    value = os.getenv(name)
    if value is None or value == "":
        return None
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"❌ {name} must be an integer, got {value!r}")


def apply_env_overrides(config: ToolkitConfig) -> ToolkitConfig:
    level = os.getenv("MAHAVIER_LOG_LEVEL")
    log_file = os.getenv("MAHAVIER_LOG_FILE")
    if level or log_file:
        config = replace(config, logging=replace(config.logging,
                                                 level=level or config.logging.level,
                                                 file=log_file or config.logging.file))
    workers = _env_int("MAHAVIER_MAX_WORKERS")
    if workers is not None:
        config = replace(config, mahavier=replace(config.mahavier, max_workers=workers))
    step = _env_int("MAHAVIER_RASTER_STEP")
    if step is not None:
        config = replace(config, raster=replace(config.raster, step_denominator=step))
    return config


def load_config(path: Optional[str] = None) -> ToolkitConfig:
    """Load YAML config (explicit path, then MAHAVIER_CONFIG, then the bundled file)"""
    load_dotenv()
    chosen = Path(path or os.getenv("MAHAVIER_CONFIG") or DEFAULT_CONFIG_PATH)
    if not chosen.exists():
        if path:
            raise ConfigError(f"❌ Config file not found: {chosen}")
        logger.warning(f"⚠️ Config file not found: {chosen}, using defaults")
        return apply_env_overrides(ToolkitConfig())
    try:
        with open(chosen, 'r', encoding="utf-8") as f:
            document = yaml.safe_load(f) or {}
    except yaml.YAMLError as error:
        raise ConfigError(f"❌ Malformed YAML in {chosen}: {error}")
    if not isinstance(document, dict):
        raise ConfigError(f"❌ {chosen} must contain a mapping")
    config = apply_env_overrides(config_from_mapping(document, str(chosen)))
    _validate(config)
    return config


def _validate(config: ToolkitConfig) -> None:
    if config.mahavier.max_workers < 1:
        raise ConfigError("❌ mahavier.max_workers must be at least 1")
    if not 8 <= config.raster.step_denominator <= 256:
        raise ConfigError("❌ raster.step_denominator must lie in 8..256")
    if config.cli.default_max_n < 2:
        raise ConfigError("❌ cli.default_max_n must be at least 2")
    if not isinstance(logging.getLevelName(config.logging.level.upper()), int):
        raise ConfigError(f"❌ Unknown log level {config.logging.level!r}")


def setup_logging(config: ToolkitConfig, level: Optional[str] = None) -> None:
    """Configure root logging once per process; library modules only create loggers"""
    handlers = [logging.StreamHandler(sys.stderr)]
    if config.logging.file:
        log_path = Path(config.logging.file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))
    logging.basicConfig(
        level=getattr(logging, (level or config.logging.level).upper(), logging.INFO),
        format=config.logging.format,
        handlers=handlers,
        force=True,
    )


def describe(config: ToolkitConfig) -> Tuple[str, ...]:
    return (
        f"config: {config.source or 'built-in defaults'}",
        f"workers: {config.mahavier.max_workers} (parallel above {config.mahavier.parallel_threshold} pairs)",
        f"raster step: 1/{config.raster.step_denominator}",
        f"log level: {config.logging.level}",
    )
