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
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring
# pylint: disable=missing-module-docstring
import json

import pytest

from ..cli.config import (CONFIG_SCHEMA, SCHEMA_VERSION, ExperimentConfig,
                          ProfileConfig, QuadratureConfig, load_config)
from ..exc import ConfigError


def test_defaults_are_hopf_experiment():
    config = ExperimentConfig()
    assert config.profiles.alpha.width == 0.1
    assert config.profiles.beta.width == 0.2
    assert config.profiles.b.width == 0.04
    assert config.loops.first_plane == [1, 2]
    assert config.loops.second_plane == [1, 3]
    assert config.loops.separation == 1.0
    assert config.eta is None
    assert config.to_dict()['schema_version'] == SCHEMA_VERSION


def test_defaults_validate():
    config = ExperimentConfig()
    assert ExperimentConfig.from_dict(config.to_dict()) == config
    assert CONFIG_SCHEMA['additionalProperties'] is False


def test_partial_update_is_merged():
    config = ExperimentConfig.from_dict(
        {'quadrature': {'panels': 4}, 'profiles': {'b': {'width': 0.05}},
         'zeta': 0.5})
    assert config.quadrature.panels == 4
    assert config.quadrature.r_max == QuadratureConfig().r_max
    assert config.profiles.b.width == 0.05
    assert config.profiles.b.kind == 'bump'
    assert config.profiles.alpha == ProfileConfig(width=0.1)
    assert config.zeta == 0.5


@pytest.mark.parametrize('data, location', [
    ({'loops': {'first_plane': [1, 1]}}, 'loops/first_plane'),
    ({'loops': {'first_traversal': 0}}, 'loops/first_traversal'),
    ({'profiles': {'alpha': {'kind': 'triangle'}}}, 'profiles/alpha/kind'),
    ({'quadrature': {'panels': 0}}, 'quadrature/panels'),
    ({'scan': {'param': 'colour'}}, 'scan/param'),
    ({'threads': 0}, 'threads'),
    ({'unknown': 1}, '<root>'),
])
def test_invalid_values(data, location):
    with pytest.raises(ConfigError) as info:
        ExperimentConfig.from_dict(data)
    assert 'at {}:'.format(location) in str(info.value)


def test_builders():
    spec = QuadratureConfig(panels=3, tolerance=1e-2).build()
    assert spec.panels == 3
    assert spec.tolerance == 1e-2
    profile = ProfileConfig(kind='gaussian', width=0.3).build(center=0.5)
    assert profile.center == 0.5
    assert profile.width == 0.3


def test_load_config(tmp_path):
    assert load_config(None) == ExperimentConfig()
    path = tmp_path / 'config.json'
    path.write_text(json.dumps({'threads': 3, 'seed': 7}))
    config = load_config(str(path))
    assert (config.threads, config.seed) == (3, 7)


@pytest.mark.parametrize('text', ['[1, 2]', '{"threads": ', '"text"'])
def test_load_config_rejects_files(tmp_path, text):
    path = tmp_path / 'config.json'
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_config(str(path))


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError) as info:
        load_config(str(tmp_path / 'missing.json'))
    assert 'Cannot read configuration' in str(info.value)
