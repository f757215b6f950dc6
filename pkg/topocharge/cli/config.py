# -*- encoding: utf8 -*-
#
# topocharge: topological charges of the free Maxwell field, numerically
#
# Copyright (C) 2024 The topocharge developers
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation; either version 2.1 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License along
# with this program; if not, see <http://www.gnu.org/licenses/>.
"""Experiment configuration: dataclass defaults, JSON schema, overrides."""
import copy
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import jsonschema

from ..exc import ConfigError
from ..exterior.profiles import PROFILE_KINDS, Profile1D
from ..propagator.quadrature import QuadratureSpec

logger = logging.getLogger('topocharge')

SCHEMA_VERSION = 1
SCAN_PARAMETERS = ('eta', 'zeta', 'separation', 'width', 'a')


@dataclass
class ProfileConfig:
    """One Profile1D: kind, width and total integral."""
    kind: str = 'bump'
    width: float = 0.1
    amplitude: float = 1.0

    def build(self, center: float = 0.0) -> Profile1D:
        """The configured profile about center."""
        return Profile1D(self.kind, center, self.width, self.amplitude)


def _alpha() -> ProfileConfig:
    return ProfileConfig(width=0.1)


def _beta() -> ProfileConfig:
    return ProfileConfig(width=0.2)


def _b() -> ProfileConfig:
    return ProfileConfig(width=0.04)


@dataclass
class ProfilesConfig:
    """Time factor alpha, axial factor beta, radial source b."""
    alpha: ProfileConfig = field(default_factory=_alpha)
    beta: ProfileConfig = field(default_factory=_beta)
    b: ProfileConfig = field(default_factory=_b)


@dataclass
class LoopConfig:
    """
    Geometry of the loop pair: unit circles in first_plane at the origin
    and in second_plane translated by separation along axis 1.
    """
    first_plane: List[int] = field(default_factory=lambda: [1, 2])
    second_plane: List[int] = field(default_factory=lambda: [1, 3])
    separation: float = 1.0
    first_traversal: int = 1
    second_traversal: int = 1
    traversal_counts: List[int] = field(default_factory=lambda: [1, 2])


@dataclass
class QuadratureConfig:
    """Fields of QuadratureSpec."""
    r_max: float = 40.0
    panels: int = 24
    radial_order: int = 8
    angular_order: float = 1.5
    angular_min: int = 12
    tolerance: float = 1e-3

    def build(self) -> QuadratureSpec:
        """The configured rule."""
        return QuadratureSpec(r_max=self.r_max, panels=self.panels,
                              radial_order=self.radial_order,
                              angular_order=self.angular_order,
                              angular_min=self.angular_min,
                              tolerance=self.tolerance)


@dataclass
class ScanConfig:
    """Parameter scan: explicit values, or a geometric ladder for width."""
    param: str = 'eta'
    values: List[float] = field(default_factory=list)
    ladder_ratio: float = 2.0


@dataclass
class OutputConfig:
    """Where results go."""
    directory: str = 'topocharge-out'
    csv_name: str = 'results.csv'
    report_name: str = 'report.json'


@dataclass
class SuiteConfig:
    """Sizes of the randomized verification suites."""
    random_points: int = 100
    random_pairs: int = 20
    random_doublets: int = 200
    rotations: int = 10


@dataclass
class ExperimentConfig:
    """Complete configuration of a run; the defaults are the Hopf
    experiment."""
    profiles: ProfilesConfig = field(default_factory=ProfilesConfig)
    loops: LoopConfig = field(default_factory=LoopConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    suites: SuiteConfig = field(default_factory=SuiteConfig)
    eta: Optional[float] = None
    zeta: float = 1.0
    a: float = 1.0
    threads: int = 1
    seed: int = 0
    cache_dir: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """JSON-serializable form, valid against CONFIG_SCHEMA."""
        result = asdict(self)
        result['schema_version'] = SCHEMA_VERSION
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ExperimentConfig':
        """
        Validate data and merge it over the defaults.
        :raises ConfigError: on schema violations
        """
        try:
            jsonschema.validate(instance=data, schema=CONFIG_SCHEMA)
        except jsonschema.ValidationError as ex:
            # pylint: disable=raise-missing-from
            raise ConfigError("Invalid configuration at {}: {}".format(
                '/'.join(str(p) for p in ex.absolute_path) or '<root>',
                ex.message))
        merged = _deep_merge(cls().to_dict(), data)
        merged.pop('schema_version', None)
        return cls(
            profiles=ProfilesConfig(**{
                name: ProfileConfig(**value)
                for name, value in merged.pop('profiles').items()}),
            loops=LoopConfig(**merged.pop('loops')),
            quadrature=QuadratureConfig(**merged.pop('quadrature')),
            scan=ScanConfig(**merged.pop('scan')),
            output=OutputConfig(**merged.pop('output')),
            suites=SuiteConfig(**merged.pop('suites')),
            **merged)


def _deep_merge(base: Dict[str, Any], update: Dict[str, Any]) \
        -> Dict[str, Any]:
    result = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = copy.deepcopy(value)
    return result


def load_config(path: Optional[str]) -> ExperimentConfig:
    """
    Defaults, or the defaults overridden by a JSON file.
    :raises ConfigError: if the file cannot be read or is invalid
    """
    if not path:
        return ExperimentConfig()
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except (OSError, ValueError) as ex:
        # pylint: disable=raise-missing-from
        raise ConfigError("Cannot read configuration {}: {}".format(path, ex))
    if not isinstance(data, dict):
        raise ConfigError("Configuration {} is not a JSON object"
                          .format(path))
    logger.info("Loaded configuration from %s", path)
    return ExperimentConfig.from_dict(data)


def _object(properties: Dict[str, Any]) -> Dict[str, Any]:
    return {'type': 'object', 'additionalProperties': False,
            'properties': properties}


_POSITIVE = {'type': 'number', 'exclusiveMinimum': 0}
_POSITIVE_INT = {'type': 'integer', 'minimum': 1}
_PROFILE = _object({
    'kind': {'enum': list(PROFILE_KINDS)},
    'width': _POSITIVE,
    'amplitude': {'type': 'number'},
})
_PLANE = {'type': 'array', 'items': {'enum': [1, 2, 3]},
          'minItems': 2, 'maxItems': 2, 'uniqueItems': True}

CONFIG_SCHEMA: Dict[str, Any] = _object({
    'schema_version': {'const': SCHEMA_VERSION},
    'profiles': _object({'alpha': _PROFILE, 'beta': _PROFILE,
                         'b': _PROFILE}),
    'loops': _object({
        'first_plane': _PLANE,
        'second_plane': _PLANE,
        'separation': _POSITIVE,
        'first_traversal': {'type': 'integer', 'not': {'const': 0}},
        'second_traversal': {'type': 'integer', 'not': {'const': 0}},
        'traversal_counts': {'type': 'array', 'minItems': 1,
                             'items': {'type': 'integer',
                                       'not': {'const': 0}}},
    }),
    'quadrature': _object({
        'r_max': _POSITIVE,
        'panels': _POSITIVE_INT,
        'radial_order': _POSITIVE_INT,
        'angular_order': {'type': 'number', 'minimum': 0},
        'angular_min': {'type': 'integer', 'minimum': 2},
        'tolerance': _POSITIVE,
    }),
    'scan': _object({
        'param': {'enum': list(SCAN_PARAMETERS)},
        'values': {'type': 'array', 'items': {'type': 'number'}},
        'ladder_ratio': {'type': 'number', 'exclusiveMinimum': 1},
    }),
    'output': _object({
        'directory': {'type': 'string', 'minLength': 1},
        'csv_name': {'type': 'string', 'minLength': 1},
        'report_name': {'type': 'string', 'minLength': 1},
    }),
    'suites': _object({
        'random_points': _POSITIVE_INT,
        'random_pairs': _POSITIVE_INT,
        'random_doublets': _POSITIVE_INT,
        'rotations': _POSITIVE_INT,
    }),
    'eta': {'type': ['number', 'null']},
    'zeta': {'type': 'number'},
    'a': {'type': 'number'},
    'threads': _POSITIVE_INT,
    'seed': {'type': 'integer', 'minimum': 0},
    'cache_dir': {'type': ['string', 'null']},
})
