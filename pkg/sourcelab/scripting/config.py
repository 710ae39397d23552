"""
Experiment configuration files.

A config is a YAML document (see ``docs/experiment_config.md``) parsed into
an ``addict.Dict`` and checked into an immutable ``ExperimentConfig``. The
config holds plain data only; ``build_source`` turns it into the validated
strength and source spec the pipeline runs on.
"""

from dataclasses import asdict, dataclass, field

import yaml
from addict import Dict

from cdislogging import get_logger

from sourcelab import settings
from sourcelab.errors import ConfigInvalid, SourceLabError
from sourcelab.farfield.patterns import largest_wavenumber
from sourcelab.params.grid import SpatialGrid
from sourcelab.params.model import ModelKind, WaveModel
from sourcelab.params.source import SourceSpec, validate_source
from sourcelab.params.strength import (
    StrengthField,
    gaussian_bump_matrix_strength,
    gaussian_bump_strength,
)
from sourcelab.utils import sha256_json

logger = get_logger(__name__)

PATHWAYS = ("monte_carlo", "analytic")
CUTOFF_POLICIES = ("max", "theory", "fixed")
STRENGTH_KINDS = ("gaussian_bump", "zero")
EM_SAMPLERS = ("factorized", "projected")


@dataclass(frozen=True)
class StrengthConfig(object):
    kind: str = "gaussian_bump"
    center: tuple = None
    width: float = 0.15
    amplitude: float = 1.0
    matrix: tuple = None


@dataclass(frozen=True)
class MonteCarloConfig(object):
    realizations: int = 256
    base_seed: int = 0
    batch_size: int = 64
    em_sampler: str = "factorized"


@dataclass(frozen=True)
class CutoffConfig(object):
    policy: str = "max"
    value: float = None


@dataclass(frozen=True)
class AsymptoticsConfig(object):
    radii: tuple = (100.0, 200.0)
    direction: tuple = None


@dataclass(frozen=True)
class ExperimentConfig(object):
    """
    Everything a run needs. Two configs that compare equal produce the same
    outputs.
    """

    model: WaveModel
    m: float
    s: int
    strength: StrengthConfig
    wavenumbers: tuple
    output_dir: str
    pathway: str = "analytic"
    directions: int = None
    half_width: float = settings.GRID_HALF_WIDTH
    points: int = settings.GRID_POINTS
    monte_carlo: MonteCarloConfig = field(default_factory=MonteCarloConfig)
    cutoff: CutoffConfig = field(default_factory=CutoffConfig)
    asymptotics: AsymptoticsConfig = None
    schema_version: int = settings.SCHEMA_VERSION

    @property
    def grid(self):
        return SpatialGrid(self.model.d, self.points, self.half_width)

    @property
    def direction_count(self):
        return int(self.directions or settings.DIRECTION_COUNTS[self.model.d])

    def to_dict(self):
        """Nested plain data in the layout of the YAML schema."""
        strength = {k: v for k, v in asdict(self.strength).items() if v is not None}
        for key in ("center", "matrix"):
            if key in strength:
                strength[key] = _lists(strength[key])
        data = {
            "schema_version": self.schema_version,
            "model": self.model.to_dict(),
            "source": {"m": self.m, "s": self.s, "strength": strength},
            "grid": {"half_width": self.half_width, "points": self.points},
            "wavenumbers": list(self.wavenumbers),
            "pathway": self.pathway,
            "monte_carlo": asdict(self.monte_carlo),
            "cutoff": {k: v for k, v in asdict(self.cutoff).items() if v is not None},
            "output_dir": self.output_dir,
        }
        if self.directions is not None:
            data["directions"] = self.directions
        if self.asymptotics is not None:
            asymptotics = {"radii": list(self.asymptotics.radii)}
            if self.asymptotics.direction is not None:
                asymptotics["direction"] = list(self.asymptotics.direction)
            data["asymptotics"] = asymptotics
        return data

    def digest(self):
        return sha256_json(self.to_dict())


def _lists(value):
    if isinstance(value, (list, tuple)):
        return [_lists(v) for v in value]
    return value


def _tuples(value):
    if isinstance(value, (list, tuple)):
        return tuple(_tuples(v) for v in value)
    return value


def _require(condition, message):
    if not condition:
        raise ConfigInvalid(message)


def _section(data, name):
    section = data.get(name)
    if section is None:
        return Dict()
    _require(isinstance(section, dict), "{} must be a mapping".format(name))
    return Dict(section)


def _model(data):
    section = _section(data, "model")
    _require(section.kind in [k.value for k in ModelKind], "model.kind is missing or unknown")
    kind = ModelKind(section.kind)
    d = section.d or (3 if kind is ModelKind.ELECTROMAGNETIC else None)
    _require(d is not None, "model.d is required")
    try:
        return WaveModel(
            kind,
            int(d),
            n=section.get("n") if kind is ModelKind.POLYHARMONIC else None,
            lame=tuple(section.lame) if section.get("lame") is not None else None,
        )
    except SourceLabError as e:
        raise ConfigInvalid("model: {}".format(e.message))


def _strength(section, d):
    kind = section.get("kind", "gaussian_bump")
    _require(kind in STRENGTH_KINDS, "source.strength.kind must be one of {}".format(STRENGTH_KINDS))
    center = section.get("center", [0.0] * d)
    _require(len(center) == d, "source.strength.center must have {} entries".format(d))
    matrix = section.get("matrix")
    if matrix is not None:
        _require(
            len(matrix) == d and all(len(row) == d for row in matrix),
            "source.strength.matrix must be {} x {}".format(d, d),
        )
    return StrengthConfig(
        kind=kind,
        center=tuple(float(c) for c in center),
        width=float(section.get("width", 0.15)),
        amplitude=float(section.get("amplitude", 1.0)),
        matrix=_tuples([[float(v) for v in row] for row in matrix]) if matrix else None,
    )


def _monte_carlo(section):
    config = MonteCarloConfig(
        realizations=int(section.get("realizations", 256)),
        base_seed=int(section.get("base_seed", 0)),
        batch_size=int(section.get("batch_size", 64)),
        em_sampler=section.get("em_sampler", "factorized"),
    )
    _require(config.realizations >= 2, "monte_carlo.realizations must be at least 2")
    _require(config.base_seed >= 0, "monte_carlo.base_seed must be non-negative")
    _require(config.batch_size >= 1, "monte_carlo.batch_size must be positive")
    _require(
        config.em_sampler in EM_SAMPLERS,
        "monte_carlo.em_sampler must be one of {}".format(EM_SAMPLERS),
    )
    return config


def _cutoff(section):
    config = CutoffConfig(
        policy=section.get("policy", "max"),
        value=float(section.value) if section.get("value") is not None else None,
    )
    _require(
        config.policy in CUTOFF_POLICIES,
        "cutoff.policy must be one of {}".format(CUTOFF_POLICIES),
    )
    if config.policy == "fixed":
        _require(
            config.value is not None and config.value > 0,
            "cutoff.value must be positive for the fixed policy",
        )
    return config


def _asymptotics(data, d):
    if data.get("asymptotics") is None:
        return None
    section = _section(data, "asymptotics")
    radii = tuple(float(r) for r in section.get("radii", (100.0, 200.0)))
    _require(radii and min(radii) >= 10.0, "asymptotics.radii must all be at least 10")
    direction = section.get("direction")
    if direction is not None:
        _require(len(direction) == d, "asymptotics.direction must have {} entries".format(d))
        direction = tuple(float(v) for v in direction)
    return AsymptoticsConfig(radii, direction)


def config_from_dict(data):
    """
    Check a parsed document and build the config.

    Raises:
        ConfigInvalid: on any missing, unknown or inconsistent field
    """
    _require(isinstance(data, dict), "config must be a mapping")
    data = Dict(data)
    version = data.get("schema_version", settings.SCHEMA_VERSION)
    _require(
        version == settings.SCHEMA_VERSION,
        "unsupported schema_version {}, expected {}".format(version, settings.SCHEMA_VERSION),
    )
    model = _model(data)
    source = _section(data, "source")
    _require(source.get("m") is not None, "source.m is required")
    _require(source.get("s") is not None, "source.s is required")
    grid = _section(data, "grid")
    wavenumbers = data.get("wavenumbers")
    _require(bool(wavenumbers), "wavenumbers must be a non-empty list")
    wavenumbers = tuple(float(k) for k in wavenumbers)
    _require(all(k > 1 for k in wavenumbers), "every wavenumber must exceed 1")
    pathway = data.get("pathway", "analytic")
    _require(pathway in PATHWAYS, "pathway must be one of {}".format(PATHWAYS))
    _require(
        pathway != "monte_carlo" or data.get("monte_carlo") is not None,
        "the monte_carlo pathway needs a monte_carlo section",
    )
    directions = data.get("directions")
    _require(directions is None or int(directions) >= 1, "directions must be positive")
    _require(bool(data.get("output_dir")), "output_dir is required")

    config = ExperimentConfig(
        model=model,
        m=float(source.m),
        s=int(source.s),
        strength=_strength(_section(source, "strength"), model.d),
        wavenumbers=wavenumbers,
        output_dir=str(data.output_dir),
        pathway=pathway,
        directions=int(directions) if directions is not None else None,
        half_width=float(grid.get("half_width", settings.GRID_HALF_WIDTH)),
        points=int(grid.get("points", settings.GRID_POINTS)),
        monte_carlo=_monte_carlo(_section(data, "monte_carlo")),
        cutoff=_cutoff(_section(data, "cutoff")),
        asymptotics=_asymptotics(data, model.d),
        schema_version=int(version),
    )
    if config.model.kind is not ModelKind.ELECTROMAGNETIC:
        _require(
            config.monte_carlo.em_sampler == "factorized",
            "monte_carlo.em_sampler only applies to the electromagnetic model",
        )
    return config


def parse_config(text):
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigInvalid("config is not valid YAML: {}".format(e))
    return config_from_dict(data)


def load_config(path):
    try:
        with open(path, "r") as f:
            return parse_config(f.read())
    except (IOError, OSError) as e:
        raise ConfigInvalid("cannot read config {}: {}".format(path, e))


def serialize_config(config):
    return yaml.safe_dump(config.to_dict(), default_flow_style=False, sort_keys=True)


def build_strength(config):
    """The planted strength on the config's grid."""
    grid = config.grid
    strength = config.strength
    vector = config.model.is_vector
    if strength.kind == "zero":
        return StrengthField.zeros(grid, matrix=vector)
    if vector:
        matrix = strength.matrix
        if matrix is None:
            matrix = [[strength.amplitude * (i == j) for j in range(grid.d)] for i in range(grid.d)]
        return gaussian_bump_matrix_strength(grid, strength.center, strength.width, matrix)
    return gaussian_bump_strength(grid, strength.center, strength.width, strength.amplitude)


def build_source(config):
    """
    Build and validate the source spec.

    Raises:
        ConfigInvalid: the strength or the source statistics are not admissible
    """
    try:
        spec = SourceSpec(config.m, config.s, build_strength(config))
        return validate_source(config.model, spec)
    except ConfigInvalid:
        raise
    except SourceLabError as e:
        raise ConfigInvalid("source: {}".format(e.message))


def validate_config(config):
    """
    Full check of a parsed config, including its source; returns the spec.

    Monte Carlo correlations at channel wavenumber w reach source frequencies
    up to 2w, which must stay below the grid Nyquist wavenumber.

    Raises:
        ConfigInvalid: the source is not admissible or a wavenumber aliases
    """
    spec = build_source(config)
    if config.pathway == "monte_carlo":
        highest = max(largest_wavenumber(config.model, k) for k in config.wavenumbers)
        _require(
            2.0 * highest <= spec.grid.nyquist,
            "wavenumbers alias on the grid: 2 * {:g} exceeds the Nyquist wavenumber "
            "{:g}; use more grid points".format(highest, spec.grid.nyquist),
        )
    logger.info(
        "config for {} model with {} wavenumbers validates".format(
            config.model.kind.value, len(config.wavenumbers)
        )
    )
    return spec
