""" Run configuration: defaults, JSON run files, command-line
    overrides and validation.

    SettingsModel keeps the editable field table (type + value per
    key, as in setup.settings_vars). to_config() freezes it into a
    validated RunConfig.

    Created: Oct 10, 2026
    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import copy
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

# Custom
from models.federationmodel import (CONNECTIVITIES, STRATEGIES,
                                    StrategyConfig)
from models.forecastmodel import ForecasterConfig
from models.metricsmodel import SepaConfig
from models.pruningmodel import ControllerConfig
from setup import settings_vars

##########
# Logger #
##########
logger = logging.getLogger(__name__)

##############
# Exceptions #
##############
class InvalidConfig(ValueError):
    """ Run configuration failed to load or validate. """
    pass

#############
# Constants #
#############
HORIZONS = (3, 6, 12)
WINDOW_SIZES = (70, 140)

############
# Sections #
############
@dataclass(frozen=True)
class DataConfig:
    speeds: str = None
    distances: str = None
    positions: str = None
    centers: str = None
    assignment: str = None


@dataclass(frozen=True)
class GraphConfig:
    kernel_sigma: float = 10_000.0
    cutoff: float = 20_000.0
    # None means K - 1
    l_hops: int = None
    radius: float = None


@dataclass(frozen=True)
class DatasetConfig:
    split_ratio: float = 0.8
    per_sensor: bool = False
    interval: int = 300


@dataclass(frozen=True)
class SyntheticConfig:
    enabled: bool = False
    nodes: int = 30
    steps: int = 2000
    jam_rate: float = 1.0
    cloudlets: int = 3
    spacing: float = 2000.0
    # Steps per hop; None draws 1-2
    lag: int = None


SECTIONS = {
    'data': DataConfig,
    'graph': GraphConfig,
    'dataset': DatasetConfig,
    'forecaster': ForecasterConfig,
    'controller': ControllerConfig,
    'sepa': SepaConfig,
    'federation': StrategyConfig,
    'synthetic': SyntheticConfig,
}

#############
# RunConfig #
#############
@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    horizon: int = 12
    window_size: int = 140
    connectivity: str = 'adaptive'
    data: DataConfig = field(default_factory=DataConfig)
    graph: GraphConfig = field(default_factory=GraphConfig)
    dataset: DatasetConfig = field(default_factory=DatasetConfig)
    forecaster: ForecasterConfig = field(default_factory=ForecasterConfig)
    controller: ControllerConfig = field(default_factory=ControllerConfig)
    sepa: SepaConfig = field(default_factory=SepaConfig)
    federation: StrategyConfig = field(default_factory=StrategyConfig)
    synthetic: SyntheticConfig = field(default_factory=SyntheticConfig)

    @property
    def l_hops(self):
        if self.graph.l_hops is None:
            return self.forecaster.K - 1
        return self.graph.l_hops

    def to_dict(self):
        """ Plain nested dict; the federation seed is the run seed. """
        out = asdict(self)
        out['federation'].pop('seed')
        return out

    @classmethod
    def from_dict(cls, values):
        """ Rebuild from to_dict() output (or any subset of it). """
        values = dict(values)
        seed = values.get('seed', 0)
        sections = {}
        for name, section in SECTIONS.items():
            raw = dict(values.pop(name, {}) or {})
            if section is StrategyConfig:
                raw['seed'] = seed
            try:
                sections[name] = section(**raw)
            except (TypeError, ValueError) as e:
                raise InvalidConfig(f"[{name}] {e}") from e
        try:
            config = cls(**values, **sections)
        except TypeError as e:
            raise InvalidConfig(str(e)) from e
        validate(config)
        return config

##############
# Validation #
##############
def validate(config, check_files=True):
    """ Raise InvalidConfig naming the first offending key. """
    if config.horizon not in HORIZONS:
        raise InvalidConfig(
            f"horizon must be one of {HORIZONS}, got {config.horizon}")
    if config.window_size <= 0:
        raise InvalidConfig("window_size must be positive")
    if config.window_size not in WINDOW_SIZES:
        logger.warning("Window size %d is not one of the documented "
                       "settings %s", config.window_size, WINDOW_SIZES)
    if config.connectivity not in CONNECTIVITIES:
        raise InvalidConfig(
            f"connectivity must be one of {CONNECTIVITIES}, "
            f"got {config.connectivity!r}")
    if config.federation.strategy not in STRATEGIES:
        raise InvalidConfig(
            f"federation.strategy must be one of {STRATEGIES}")
    if not 0 < config.dataset.split_ratio < 1:
        raise InvalidConfig("dataset.split_ratio must be in (0, 1)")
    if config.dataset.interval <= 0:
        raise InvalidConfig("dataset.interval must be positive")
    if config.graph.kernel_sigma <= 0 or config.graph.cutoff <= 0:
        raise InvalidConfig("graph.kernel_sigma and graph.cutoff must be "
                            "positive")
    if config.graph.l_hops is not None and config.graph.l_hops < 0:
        raise InvalidConfig("graph.l_hops must be >= 0")
    if config.graph.radius is not None and config.graph.radius <= 0:
        raise InvalidConfig("graph.radius must be positive")

    syn = config.synthetic
    if syn.enabled:
        if syn.nodes < 2 or syn.steps < 50:
            raise InvalidConfig("synthetic needs nodes >= 2, steps >= 50")
        if not 1 <= syn.cloudlets <= syn.nodes:
            raise InvalidConfig("synthetic.cloudlets must be in [1, nodes]")
        if syn.jam_rate < 0 or syn.spacing <= 0:
            raise InvalidConfig("synthetic.jam_rate must be >= 0 and "
                                "synthetic.spacing positive")
        if syn.lag is not None and syn.lag < 1:
            raise InvalidConfig("synthetic.lag must be >= 1")
        return config

    data = config.data
    if data.speeds is None:
        raise InvalidConfig("data.speeds is required unless synthetic is "
                            "enabled")
    if data.distances is None and data.positions is None:
        raise InvalidConfig("data.distances or data.positions is required")
    if data.assignment is None:
        if data.centers is None or data.positions is None:
            raise InvalidConfig(
                "data.assignment, or data.centers with data.positions, "
                "is required")
        if config.graph.radius is None:
            raise InvalidConfig("graph.radius is required with data.centers")
    if check_files:
        for key, value in asdict(data).items():
            if value is not None and not Path(value).is_file():
                raise InvalidConfig(f"data.{key}: no such file {value}")
    return config

#################
# SettingsModel #
#################
def _is_leaf(entry):
    return isinstance(entry, dict) and set(entry) == {'type', 'value'}


def _coerce(key, vartype, value):
    """ Convert a raw value to its declared type (None passes). """
    if value is None:
        return None
    try:
        if vartype == 'bool':
            if isinstance(value, str):
                if value.lower() not in ('true', 'false', 'yes', 'no'):
                    raise ValueError(value)
                return value.lower() in ('true', 'yes')
            return bool(value)
        if vartype == 'int':
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(value)
        if vartype == 'float':
            return float(value)
        return str(value)
    except (TypeError, ValueError):
        raise InvalidConfig(
            f"{key}: cannot read {value!r} as {vartype}") from None


class SettingsModel:
    """ Editable settings table backed by settings_vars.fields. """

    def __init__(self, settings_vars=settings_vars.fields, filepath=None):
        logger.debug("Initializing SettingsModel")
        self.fields = copy.deepcopy(settings_vars)
        self.base_dir = Path.cwd()
        self.filepath = None
        if filepath is not None:
            self.load(filepath)

    def _entry(self, key):
        node = self.fields
        for part in key.split('.'):
            if not isinstance(node, dict) or part not in node \
                    or _is_leaf(node):
                raise InvalidConfig(f"Unknown setting {key!r}")
            node = node[part]
        if not _is_leaf(node):
            raise InvalidConfig(f"{key!r} is a section, not a setting")
        return node

    def get(self, key):
        return self._entry(key)['value']

    def set(self, key, value):
        entry = self._entry(key)
        value = _coerce(key, entry['type'], value)
        if entry['type'] == 'path' and value is not None:
            path = Path(value)
            if not path.is_absolute():
                path = self.base_dir / path
            value = str(path)
        entry['value'] = value

    def _overlay(self, values, prefix=''):
        if not isinstance(values, dict):
            raise InvalidConfig(f"Section {prefix.rstrip('.')!r} must be an "
                                "object")
        for name, value in values.items():
            key = prefix + name
            if isinstance(value, dict):
                self._overlay(value, key + '.')
            else:
                self.set(key, value)

    def load(self, filepath):
        """ Overlay a JSON run file on the current values. Relative
            paths resolve against the file's directory.
        """
        filepath = Path(filepath)
        logger.info("Loading run file %s", filepath)
        try:
            with open(filepath, 'r', encoding='utf-8') as f:
                values = json.load(f)
        except FileNotFoundError:
            raise InvalidConfig(f"No such run file: {filepath}") from None
        except json.JSONDecodeError as e:
            raise InvalidConfig(f"{filepath}: {e}") from e
        self.filepath = filepath
        self.base_dir = filepath.resolve().parent
        self._overlay(values)

    def update(self, overrides):
        """ Apply dotted-key overrides, skipping None values. """
        for key, value in overrides.items():
            if value is not None:
                logger.debug("Override %s = %r", key, value)
                self.set(key, value)

    def values(self, node=None):
        node = self.fields if node is None else node
        return {
            k: v['value'] if _is_leaf(v) else self.values(v)
            for k, v in node.items()
            }

    def save(self, filepath):
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(self.values(), f, indent=2, sort_keys=True)
        logger.debug("Saved settings to %s", filepath)

    def to_config(self):
        return RunConfig.from_dict(self.values())


def load_config(filepath=None, overrides=None):
    """ Defaults, then the run file, then the overrides. """
    model = SettingsModel(filepath=filepath)
    if overrides:
        model.update(overrides)
    return model.to_config()


if __name__ == "__main__":
    pass
