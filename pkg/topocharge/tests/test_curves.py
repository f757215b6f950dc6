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
import math

import numpy as np
import pytest

from ..exc import InvalidLoopError
from ..loops.curves import CircleLoop, CurveLoop


def helix_loop(closed=True):
    turns = 1.0 if closed else 0.9

    def position(t):
        angle = 2 * math.pi * turns * t
        return np.column_stack([np.zeros_like(t), 4 + np.cos(angle),
                                np.sin(angle), 0.3 * np.sin(2 * angle)])

    def velocity(t):
        angle = 2 * math.pi * turns * t
        speed = 2 * math.pi * turns
        return speed * np.column_stack([
            np.zeros_like(t), -np.sin(angle), np.cos(angle),
            0.6 * np.cos(2 * angle)])
    return CurveLoop(position, velocity, label='wobble')


@pytest.mark.parametrize('arguments', [
    {'plane': (1, 1)},
    {'plane': (0, 1)},
    {'radius': 0.0},
    {'radius': math.inf},
    {'traversal': 0},
    {'traversal': 1.5},
    {'center': (0.0, 0.0, 0.0)},
])
def test_invalid_circles(arguments):
    with pytest.raises(InvalidLoopError):
        CircleLoop(**arguments)


def test_circle_geometry():
    loop = CircleLoop((1, 3), 2.0, center=(0.5, 1.0, 0.0, 0.0))
    points = loop.samples(64)
    assert np.allclose(points[:, 0], 0.5)
    assert np.allclose(points[:, 2], 0.0)
    assert np.allclose(np.hypot(points[:, 1] - 1.0, points[:, 3]), 2.0)
    assert loop.normal_axis == 2
    assert loop.extent() == 2.0
    assert loop.spacelike
    loop.check_closed()


def test_circle_velocity():
    loop = CircleLoop((2, 3), 1.5, traversal=-2)
    t = np.linspace(0.0, 1.0, 9)
    step = 1e-6
    numeric = (loop.position(t + step) - loop.position(t - step)) \
        / (2 * step)
    assert np.allclose(loop.velocity(t), numeric, atol=1e-6)
    assert loop.windings == 2


def test_traversed_and_translated():
    loop = CircleLoop((1, 2), 1.0)
    twice = loop.traversed(2)
    assert twice.traversal == 2
    assert np.allclose(twice.position(np.array([0.25])),
                       loop.position(np.array([0.5])))
    moved = loop.translated((1.0, 0.0, 0.0, 3.0))
    assert np.allclose(moved.center, [1.0, 0.0, 0.0, 3.0])
    assert 'traversal=1' in repr(loop)


def test_rotation_flips_orientation_with_sign():
    loop = CircleLoop((1, 2), 1.0)
    rotation = np.diag([1.0, 1.0, -1.0, -1.0])
    rotated = loop.rotated(rotation)
    assert rotated.plane == (1, 2)
    assert rotated.traversal == -1
    t = np.linspace(0.0, 1.0, 7)
    assert np.allclose(rotated.position(t), loop.position(t) @ rotation.T)


def test_curve_loop():
    loop = helix_loop()
    assert loop.label == 'wobble'
    assert loop.is_constant_time()
    assert loop.spacelike
    assert loop.windings == 1
    moved = loop.translated((0.0, 1.0, 0.0, 0.0))
    assert np.allclose(moved.position(np.array([0.0])), [[0.0, 6.0, 0.0,
                                                          0.0]])


def test_curve_loop_must_close():
    with pytest.raises(InvalidLoopError):
        helix_loop(closed=False)


def test_timelike_curve_is_not_spacelike():
    def position(t):
        angle = 2 * math.pi * t
        return np.column_stack([3 * np.sin(angle), np.cos(angle),
                                np.sin(angle), np.zeros_like(t)])

    def velocity(t):
        angle = 2 * math.pi * t
        return 2 * math.pi * np.column_stack([
            3 * np.cos(angle), -np.sin(angle), np.cos(angle),
            np.zeros_like(t)])
    loop = CurveLoop(position, velocity)
    assert not loop.is_constant_time()
    assert not loop.spacelike
