"""Run configuration: one INI file describes data, network, and training.

A run manifest written after training is itself a valid run configuration
(the extra [result] section is ignored on load), so any finished run can be
reproduced by pointing the trainer at its manifest.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .network import NetworkConfig
from .synth import SynthConfig, SynthGroup
from .training import HyperParams

DATA_SOURCES = ("csv", "synth")


@dataclass
class RunConfig:
    """Everything one training or evaluation run needs."""

    label: str = "run"
    source: str = "synth"
    csv_path: str | None = None
    csv_preload_unit: str = "N"
    csv_load_unit: str = "N"
    max_samples: int | None = None
    synth: SynthConfig | None = None
    hidden_sizes: tuple[int, int] = (6, 3)
    init_seed: int = 0
    hp: HyperParams = field(default_factory=HyperParams)
    split_seed: int = 0
    stratified: bool = True
    out_dir: str = "runs/run"

    def __post_init__(self) -> None:
        if self.source not in DATA_SOURCES:
            raise ConfigError(
                f"data source must be one of {list(DATA_SOURCES)}, got {self.source!r}"
            )
        if self.source == "csv":
            if not self.csv_path:
                raise ConfigError("data source is csv but no csv_path is set")
            if self.synth is not None:
                raise ConfigError(
                    "config declares both a csv path and generator settings; "
                    "exactly one data source must be active"
                )
        else:
            if self.csv_path:
                raise ConfigError(
                    "config declares both a csv path and generator settings; "
                    "exactly one data source must be active"
                )
            if self.synth is None:
                raise ConfigError("data source is synth but no [synth] section is set")
        if self.max_samples is not None and self.max_samples < 5:
            raise ConfigError(
                f"max_samples must be at least 5 to allow a split, got {self.max_samples}"
            )

    def network_config(self) -> NetworkConfig:
        return NetworkConfig(
            hidden_sizes=self.hidden_sizes,
            hidden_activation=self.hp.hidden_activation,
            output_activation=self.hp.resolved_output_activation(),
            init_method=self.hp.init_method,
            bias_init=self.hp.bias_init,
            seed=self.init_seed,
        )

    def override_seeds(self, seed: int) -> None:
        """Force every stage seed to one value (command line --seed)."""
        self.init_seed = seed
        self.hp.seed = seed
        self.split_seed = seed
        if self.synth is not None:
            self.synth.seed = seed


def parse_groups(text: str) -> list[SynthGroup]:
    """Parse 'M6:8.8:8000:20, M10:10.9:25000:5' into generator groups.

    Fields are designation:grade:preload_n:count with an optional fifth
    field naming the group.
    """
    groups: list[SynthGroup] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(":")]
        if len(parts) not in (4, 5):
            raise ConfigError(
                f"group {chunk!r} must be designation:grade:preload_n:count[:label]"
            )
        try:
            grade = float(parts[1])
            preload = float(parts[2])
            count = int(parts[3])
        except ValueError:
            raise ConfigError(f"group {chunk!r} has a non-numeric field") from None
        label = parts[4] if len(parts) == 5 else ""
        groups.append(SynthGroup(parts[0], grade, preload, count, label))
    if not groups:
        raise ConfigError("groups value is empty")
    return groups


def format_groups(groups: list[SynthGroup]) -> str:
    chunks = []
    for g in groups:
        chunk = f"{g.designation}:{g.strength_grade!r}:{g.preload_n!r}:{g.count}"
        if g.label:
            chunk += f":{g.label}"
        chunks.append(chunk)
    return ", ".join(chunks)


def _get(parser: configparser.ConfigParser, section: str, key: str, cast, default):
    if not parser.has_option(section, key):
        if default is _REQUIRED:
            raise ConfigError(f"missing required config value [{section}] {key}")
        return default
    raw = parser.get(section, key)
    try:
        if cast is bool:
            return parser.getboolean(section, key)
        return cast(raw)
    except ValueError:
        raise ConfigError(
            f"config value [{section}] {key} = {raw!r} is not a valid {cast.__name__}"
        ) from None


_REQUIRED = object()


def load_run_config(path) -> RunConfig:
    """Parse a run configuration (or run manifest) from an INI file."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"could not read config {path}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigError(f"could not parse config {path}: {exc}") from None
    label = _get(parser, "run", "label", str, Path(path).stem)
    source = _get(parser, "data", "source", str, _REQUIRED)
    csv_path = _get(parser, "data", "csv_path", str, None)
    csv_preload_unit = _get(parser, "data", "csv_preload_unit", str, "N")
    csv_load_unit = _get(parser, "data", "csv_load_unit", str, "N")
    max_samples = _get(parser, "data", "max_samples", int, None)
    synth = None
    if parser.has_section("synth"):
        try:
            synth = SynthConfig(
                groups=parse_groups(_get(parser, "synth", "groups", str, _REQUIRED)),
                mu_head_range=(
                    _get(parser, "synth", "mu_head_low", float, 0.08),
                    _get(parser, "synth", "mu_head_high", float, 0.20),
                ),
                mu_thread_range=(
                    _get(parser, "synth", "mu_thread_low", float, 0.08),
                    _get(parser, "synth", "mu_thread_high", float, 0.20),
                ),
                noise=_get(parser, "synth", "noise", float, 0.0),
                seed=_get(parser, "synth", "seed", int, 0),
                capacity_factor=_get(parser, "synth", "capacity_factor", float, 1.0),
            )
        except ConfigError:
            raise
    try:
        hp = HyperParams(
            learning_rate=_get(parser, "training", "learning_rate", float, 0.01),
            batch_size=_get(parser, "training", "batch_size", int, 4),
            epochs=_get(parser, "training", "epochs", int, 1000),
            loss=_get(parser, "training", "loss", str, "huber"),
            huber_delta=_get(parser, "training", "huber_delta", float, 1.0),
            optimizer=_get(parser, "training", "optimizer", str, "sgd"),
            init_method=_get(parser, "training", "init_method", str, "xavier"),
            bias_init=_get(parser, "training", "bias_init", str, "zero"),
            hidden_activation=_get(parser, "training", "hidden_activation", str, "sigmoid"),
            output_activation=_get(parser, "training", "output_activation", str, "auto"),
            scaling=_get(parser, "training", "scaling", str, "normalization"),
            preload_unit=_get(parser, "training", "preload_unit", str, "kN"),
            load_unit=_get(parser, "training", "load_unit", str, "MN"),
            seed=_get(parser, "training", "train_seed", int, 0),
        )
    except Exception as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"config {path}: {exc}") from None
    try:
        cfg = RunConfig(
            label=label,
            source=source,
            csv_path=csv_path,
            csv_preload_unit=csv_preload_unit,
            csv_load_unit=csv_load_unit,
            max_samples=max_samples,
            synth=synth,
            hidden_sizes=(
                _get(parser, "network", "hidden1", int, 6),
                _get(parser, "network", "hidden2", int, 3),
            ),
            init_seed=_get(parser, "network", "init_seed", int, 0),
            hp=hp,
            split_seed=_get(parser, "split", "seed", int, 0),
            stratified=_get(parser, "split", "stratified", bool, True),
            out_dir=_get(parser, "output", "dir", str, "runs/" + label),
        )
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(f"config {path}: {exc}") from None
    return cfg


def write_run_config(cfg: RunConfig, path, result: dict | None = None) -> None:
    """Write a resolved configuration, optionally with a [result] section.

    The output parses back into an equal RunConfig, which is what makes a
    manifest reusable as the config of a reproduction run.
    """
    parser = configparser.ConfigParser()
    parser["run"] = {"label": cfg.label}
    data: dict[str, str] = {"source": cfg.source}
    if cfg.csv_path:
        data["csv_path"] = cfg.csv_path
        data["csv_preload_unit"] = cfg.csv_preload_unit
        data["csv_load_unit"] = cfg.csv_load_unit
    if cfg.max_samples is not None:
        data["max_samples"] = str(cfg.max_samples)
    parser["data"] = data
    if cfg.synth is not None:
        parser["synth"] = {
            "groups": format_groups(cfg.synth.groups),
            "mu_head_low": repr(cfg.synth.mu_head_range[0]),
            "mu_head_high": repr(cfg.synth.mu_head_range[1]),
            "mu_thread_low": repr(cfg.synth.mu_thread_range[0]),
            "mu_thread_high": repr(cfg.synth.mu_thread_range[1]),
            "noise": repr(cfg.synth.noise),
            "seed": str(cfg.synth.seed),
            "capacity_factor": repr(cfg.synth.capacity_factor),
        }
    parser["network"] = {
        "hidden1": str(cfg.hidden_sizes[0]),
        "hidden2": str(cfg.hidden_sizes[1]),
        "init_seed": str(cfg.init_seed),
    }
    parser["training"] = {
        "learning_rate": repr(cfg.hp.learning_rate),
        "batch_size": str(cfg.hp.batch_size),
        "epochs": str(cfg.hp.epochs),
        "loss": cfg.hp.loss,
        "huber_delta": repr(cfg.hp.huber_delta),
        "optimizer": cfg.hp.optimizer,
        "init_method": cfg.hp.init_method,
        "bias_init": cfg.hp.bias_init,
        "hidden_activation": cfg.hp.hidden_activation,
        "output_activation": cfg.hp.output_activation,
        "scaling": cfg.hp.scaling,
        "preload_unit": cfg.hp.preload_unit,
        "load_unit": cfg.hp.load_unit,
        "train_seed": str(cfg.hp.seed),
    }
    parser["split"] = {
        "seed": str(cfg.split_seed),
        "stratified": "true" if cfg.stratified else "false",
    }
    parser["output"] = {"dir": cfg.out_dir}
    if result:
        parser["result"] = {k: str(v) for k, v in result.items()}
    with open(path, "w") as fh:
        parser.write(fh)
