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
"""Conftest helper pytest file: fixtures contained here are
 reachable by all tests"""
import pytest

from ..exterior.cache import TransformCache, set_cache
from ..exterior.profiles import Profile1D
from ..loops.loop_functions import canonical_g, canonical_g0
from ..propagator.quadrature import QuadratureSpec

HOPF_SHIFT = (0.0, 1.0, 0.0, 0.0)


@pytest.fixture(scope='session', autouse=True)
def transform_cache(tmp_path_factory):
    """Process-wide transform cache in a temporary directory, shared by
    the whole session so tables are computed once."""
    cache = TransformCache(tmp_path_factory.mktemp('transform-cache'))
    set_cache(cache)
    return cache


@pytest.fixture
def coarse_spec():
    """Cheap light-cone rule for identities that hold node by node."""
    return QuadratureSpec(r_max=20.0, panels=6, radial_order=6,
                          angular_order=1.0, angular_min=8)


@pytest.fixture
def fine_spec():
    """Rule used where the size of a value matters."""
    return QuadratureSpec(r_max=30.0, panels=12, radial_order=8,
                          angular_order=2.0, angular_min=12)


@pytest.fixture
def alpha():
    """Time factor."""
    return Profile1D('bump', 0.0, 0.1)


@pytest.fixture
def beta():
    """Axial factor."""
    return Profile1D('bump', 0.0, 0.2)


@pytest.fixture
def b_profile():
    """Radial source, a profile of the squared distance."""
    return Profile1D('bump', 0.0, 0.04)


@pytest.fixture
def hopf_pair(alpha, beta, b_profile):
    # pylint: disable=redefined-outer-name
    """g^(12) at the origin and g^(13) shifted by a unit along axis 1."""
    return (canonical_g((1, 2), 3, alpha, beta, b_profile),
            canonical_g((1, 3), 2, alpha, beta, b_profile,
                        translation=HOPF_SHIFT))


@pytest.fixture
def electric_partner(alpha, beta, b_profile):
    # pylint: disable=redefined-outer-name
    """g^(03) on the torus of g^(12)."""
    return canonical_g0(3, (1, 2), alpha, beta, b_profile)


@pytest.fixture
def tiny_spec():
    """Smallest symmetric rule, for identities that hold node by node."""
    return QuadratureSpec(r_max=10.0, panels=2, radial_order=4,
                          angular_order=0.5, angular_min=4)
