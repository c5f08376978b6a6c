"""
Module Name: problem_config

Loading and validation of problem description files.

A problem file is a JSON document describing the hypersurface, the sampling region,
tolerance overrides and the optional defining-system and parametrization blocks.
It is validated by marshmallow schemas and loaded into dataclasses. `--set key.path=value`
overrides are applied to the raw document before validation.

Example:
    >>> from src.config import load_problem_config
    >>> config = load_problem_config("sphere.json", overrides=["region.resolution=4"])
    >>> config.region.resolution
    (4, 4, 4, 4)
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

from marshmallow import Schema, ValidationError, fields, post_load, validates_schema
from marshmallow.validate import Length, OneOf, Range

from src.errors.cli import ConfigurationError
from src.errors.geometry import InvalidToleranceError
from src.errors.strata import InvalidRegionError
from src.models import Region, ToleranceConfig

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "csv")
DEFAULT_BOX = (-1.0, 1.0)
DEFAULT_RESOLUTION = 3
DEFAULT_PARAMETER_COUNT = 20


@dataclass(frozen=True)
class StrataConfig:
    q: Optional[int] = None
    center: Optional[Tuple[complex, ...]] = None
    radius: Optional[float] = None


@dataclass(frozen=True)
class SystemConfig:
    functions: Tuple[str, ...]
    k: Optional[int] = None
    q: Optional[int] = None
    radical: bool = False


@dataclass(frozen=True)
class ParametrizationConfig:
    q: int
    components: Tuple[str, ...]
    samples: Optional[Tuple[Tuple[complex, ...], ...]] = None
    box: Tuple[float, float] = DEFAULT_BOX
    count: int = DEFAULT_PARAMETER_COUNT
    seed: int = 0


@dataclass(frozen=True)
class ProblemConfig:
    """
    A validated problem description.

    Attributes:
        rho: Source text of the defining function.
        dimension: Ambient complex dimension N.
        variables: Optional custom variable names (N of them).
        region: Seeding region.
        tolerances: Numerical thresholds.
        sign: Forced Levi orientation, or None to let the scan choose.
        strata: Stratum level, neighbourhood center and radius.
        system: Defining-system block, if any.
        parametrization: Parametrization block, if any.
        output_format: "json" or "csv".
    """
    rho: str
    dimension: int
    region: Region
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    variables: Optional[Tuple[str, ...]] = None
    sign: Optional[int] = None
    strata: StrataConfig = field(default_factory=StrataConfig)
    system: Optional[SystemConfig] = None
    parametrization: Optional[ParametrizationConfig] = None
    output_format: str = "json"


class ComplexNumber(fields.Field):
    """A complex number written as a real number or a [re, im] pair."""

    default_error_messages = {"invalid": "Expected a number or a [re, im] pair."}

    def _deserialize(self, value, attr, data, **kwargs) -> complex:
        if isinstance(value, bool):
            raise self.make_error("invalid")
        if isinstance(value, (int, float)):
            return complex(value)
        if isinstance(value, (list, tuple)) and len(value) == 2 and all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            return complex(value[0], value[1])
        raise self.make_error("invalid")

    def _serialize(self, value, attr, obj, **kwargs):
        return None if value is None else [value.real, value.imag]


class ComplexVector(fields.List):
    def __init__(self, **kwargs) -> None:
        super().__init__(ComplexNumber(), **kwargs)

    def _deserialize(self, value, attr, data, **kwargs) -> Tuple[complex, ...]:
        return tuple(super()._deserialize(value, attr, data, **kwargs))


class Resolution(fields.Field):
    """Grid resolution: one integer for every axis, or a list with one per axis."""

    default_error_messages = {"invalid": "Resolution must be an integer >= 2 or a list of them."}

    def _deserialize(self, value, attr, data, **kwargs):
        values = value if isinstance(value, list) else [value]
        if not values or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 2 for v in values):
            raise self.make_error("invalid")
        return value if isinstance(value, int) else tuple(value)


class RegionSchema(Schema):
    bounds = fields.List(fields.List(fields.Float(allow_nan=False), validate=Length(equal=2)))
    box = fields.List(fields.Float(allow_nan=False), validate=Length(equal=2))
    resolution = Resolution(load_default=DEFAULT_RESOLUTION)
    seed = fields.Integer(load_default=0)
    jitter = fields.Float(load_default=0.25, validate=Range(min=0.0, max=1.0, max_inclusive=False))

    @validates_schema
    def validate_extent(self, data: Dict[str, Any], **kwargs) -> None:
        if "bounds" in data and "box" in data:
            raise ValidationError("Give either 'bounds' or 'box', not both.")


class ToleranceSchema(Schema):
    eig_zero_tol = fields.Float(validate=Range(min=0.0, min_inclusive=False))
    rank_tol = fields.Float(validate=Range(min=0.0, min_inclusive=False))
    newton_tol = fields.Float(validate=Range(min=0.0, min_inclusive=False))
    newton_max_iter = fields.Integer(validate=Range(min=1))
    grad_min = fields.Float(validate=Range(min=0.0, min_inclusive=False))
    stratum_tol = fields.Float(validate=Range(min=0.0, min_inclusive=False))
    fd_step = fields.Float(validate=Range(min=0.0, min_inclusive=False))

    @post_load
    def make_tolerances(self, data: Dict[str, Any], **kwargs) -> ToleranceConfig:
        try:
            return ToleranceConfig(**data)
        except InvalidToleranceError as e:
            raise ValidationError(str(e)) from e


class StrataSchema(Schema):
    q = fields.Integer(load_default=None, validate=Range(min=1))
    center = ComplexVector(load_default=None)
    radius = fields.Float(load_default=None, validate=Range(min=0.0, min_inclusive=False))

    @post_load
    def make_strata(self, data: Dict[str, Any], **kwargs) -> StrataConfig:
        return StrataConfig(**data)


class SystemSchema(Schema):
    functions = fields.List(fields.String(), required=True, validate=Length(min=1))
    k = fields.Integer(load_default=None, validate=Range(min=0))
    q = fields.Integer(load_default=None, validate=Range(min=0))
    radical = fields.Boolean(load_default=False)

    @post_load
    def make_system(self, data: Dict[str, Any], **kwargs) -> SystemConfig:
        return SystemConfig(functions=tuple(data["functions"]), k=data["k"], q=data["q"], radical=data["radical"])


class ParametrizationSchema(Schema):
    q = fields.Integer(required=True, validate=Range(min=1))
    components = fields.List(fields.String(), required=True, validate=Length(min=1))
    samples = fields.List(ComplexVector(), load_default=None, validate=Length(min=1))
    box = fields.List(fields.Float(allow_nan=False), load_default=list(DEFAULT_BOX), validate=Length(equal=2))
    count = fields.Integer(load_default=DEFAULT_PARAMETER_COUNT, validate=Range(min=1))
    seed = fields.Integer(load_default=0)

    @validates_schema
    def validate_samples(self, data: Dict[str, Any], **kwargs) -> None:
        for sample in data.get("samples") or ():
            if len(sample) != data.get("q"):
                raise ValidationError(f"Every sample needs {data.get('q')} coordinates.", "samples")

    @post_load
    def make_parametrization(self, data: Dict[str, Any], **kwargs) -> ParametrizationConfig:
        samples = data["samples"]
        return ParametrizationConfig(
            q=data["q"],
            components=tuple(data["components"]),
            samples=None if samples is None else tuple(samples),
            box=tuple(data["box"]),
            count=data["count"],
            seed=data["seed"],
        )


class OutputSchema(Schema):
    format = fields.String(load_default="json", validate=OneOf(OUTPUT_FORMATS))


class ProblemConfigSchema(Schema):
    rho = fields.String(required=True, validate=Length(min=1))
    dimension = fields.Integer(required=True, validate=Range(min=2))
    variables = fields.List(fields.String(), load_default=None)
    region = fields.Nested(RegionSchema, load_default=dict)
    tolerances = fields.Nested(ToleranceSchema, load_default=ToleranceConfig)
    sign = fields.Integer(load_default=None, allow_none=True, validate=OneOf([1, -1]))
    strata = fields.Nested(StrataSchema, load_default=StrataConfig)
    system = fields.Nested(SystemSchema, load_default=None)
    parametrization = fields.Nested(ParametrizationSchema, load_default=None)
    output = fields.Nested(OutputSchema, load_default=lambda: {"format": "json"})

    @validates_schema
    def validate_shapes(self, data: Dict[str, Any], **kwargs) -> None:
        dimension = data.get("dimension")
        if dimension is None:
            return
        variables = data.get("variables")
        if variables is not None and len(variables) != dimension:
            raise ValidationError(f"Expected {dimension} variable names.", "variables")
        center = data.get("strata").center if isinstance(data.get("strata"), StrataConfig) else None
        if center is not None and len(center) != dimension:
            raise ValidationError(f"Stratum center needs {dimension} coordinates.", "strata")
        parametrization = data.get("parametrization")
        if parametrization is not None and len(parametrization.components) != dimension:
            raise ValidationError(f"Parametrization needs {dimension} components.", "parametrization")
        bounds = data.get("region", {}).get("bounds")
        if bounds is not None and len(bounds) != 2 * dimension:
            raise ValidationError(f"Region needs {2 * dimension} intervals.", "region")
        resolution = data.get("region", {}).get("resolution")
        if isinstance(resolution, tuple) and len(resolution) != 2 * dimension:
            raise ValidationError(f"Region needs {2 * dimension} resolutions.", "region")

    @post_load
    def make_config(self, data: Dict[str, Any], **kwargs) -> ProblemConfig:
        dimension = data["dimension"]
        region_data = data["region"]
        bounds = region_data.get("bounds")
        if bounds is None:
            bounds = [region_data.get("box", DEFAULT_BOX)] * (2 * dimension)
        resolution = region_data.get("resolution", DEFAULT_RESOLUTION)
        if isinstance(resolution, int):
            resolution = (resolution,) * (2 * dimension)
        try:
            region = Region(
                bounds=tuple((float(lo), float(hi)) for lo, hi in bounds),
                resolution=tuple(resolution),
                seed=region_data.get("seed", 0),
                jitter=region_data.get("jitter", 0.25),
            )
        except InvalidRegionError as e:
            raise ValidationError(str(e), "region") from e
        return ProblemConfig(
            rho=data["rho"],
            dimension=dimension,
            region=region,
            tolerances=data["tolerances"],
            variables=None if data["variables"] is None else tuple(data["variables"]),
            sign=data["sign"],
            strata=data["strata"],
            system=data["system"],
            parametrization=data["parametrization"],
            output_format=data["output"]["format"],
        )


def _decode_value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(document: Dict[str, Any], overrides: Sequence[str]) -> Dict[str, Any]:
    """
    Applies `key.path=value` assignments to a raw document, creating nested objects.

    Values are decoded as JSON when possible and kept as strings otherwise.

    Raises:
        ConfigurationError: On an assignment without '=' or an empty key, or when a
            path crosses a non-object value.
    """
    for override in overrides:
        key, sep, raw = override.partition("=")
        path = key.strip().split(".")
        if not sep or not all(path):
            raise ConfigurationError(f"Invalid override {override!r}; expected key.path=value")
        node = document
        for part in path[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigurationError(f"Override {override!r} crosses non-object key {part!r}")
            node = child
        node[path[-1]] = _decode_value(raw)
        logger.debug("Override %s = %r", key, node[path[-1]])
    return document


def parse_problem_config(document: Dict[str, Any], overrides: Sequence[str] = ()) -> ProblemConfig:
    """
    Validates a raw document (after overrides) into a ProblemConfig.

    Raises:
        ConfigurationError: On any schema violation, with marshmallow's messages.
    """
    if not isinstance(document, dict):
        raise ConfigurationError("Problem description must be a JSON object")
    document = apply_overrides(json.loads(json.dumps(document)), overrides)
    try:
        return ProblemConfigSchema().load(document)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid problem description: {e.messages}") from e


def load_problem_config(path: Path, overrides: Sequence[str] = ()) -> ProblemConfig:
    """
    Reads and validates a problem description file.

    Raises:
        ConfigurationError: If the file cannot be read, is not JSON, or fails validation.
    """
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigurationError(f"Cannot read problem file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Problem file {path} is not valid JSON: {e}") from e
    config = parse_problem_config(document, overrides)
    logger.info("Loaded problem %r in C^%d from %s", config.rho, config.dimension, path)
    return config
