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
import pytest

from ..exc import GeometryError
from ..exterior.support import spatial_permutation
from ..loops.curves import CircleLoop
from ..loops.linking import gauss_linking, linking_integral

from .test_curves import helix_loop


def hopf_loops():
    return (CircleLoop((1, 2), 1.0),
            CircleLoop((1, 3), 1.0, center=(0.0, 1.0, 0.0, 0.0)))


def test_hopf_link():
    first, second = hopf_loops()
    linking = gauss_linking(first, second)
    assert abs(linking.number) == 1
    assert linking.raw == pytest.approx(linking.number, abs=1e-6)
    assert gauss_linking(second, first).number == linking.number


def test_orientation_reverses_sign():
    first, second = hopf_loops()
    number = gauss_linking(first, second).number
    assert gauss_linking(first.traversed(-1), second).number == -number
    assert gauss_linking(first.traversed(-1),
                         second.traversed(-1)).number == number


@pytest.mark.parametrize('n1, n2', [(2, 1), (1, 3), (2, 2)])
def test_traversal_counts_multiply(n1, n2):
    first, second = hopf_loops()
    number = gauss_linking(first, second).number
    assert gauss_linking(first.traversed(n1),
                         second.traversed(n2)).number == n1 * n2 * number


def test_unlinked_loops():
    first, second = hopf_loops()
    far = second.translated((0.0, 4.0, 0.0, 0.0))
    assert gauss_linking(first, far).number == 0
    assert abs(linking_integral(first, far)) < 1e-6
    assert gauss_linking(first, helix_loop()).number == 0


def test_rotation_invariance():
    first, second = hopf_loops()
    rotation = spatial_permutation((2, 3, 1), (1, -1, -1))
    assert gauss_linking(first.rotated(rotation),
                         second.rotated(rotation)).number == \
        gauss_linking(first, second).number


def test_intersecting_loops():
    first = CircleLoop((1, 2), 1.0)
    second = CircleLoop((1, 3), 1.0)
    with pytest.raises(GeometryError):
        gauss_linking(first, second)


def test_loops_at_different_times():
    first, second = hopf_loops()
    with pytest.raises(GeometryError):
        gauss_linking(first, second.translated((0.5, 0.0, 0.0, 0.0)))


def test_coarse_sampling_rejected():
    first, second = hopf_loops()
    with pytest.raises(GeometryError):
        gauss_linking(first, second, nodes=4)
