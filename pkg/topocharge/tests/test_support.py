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
import numpy as np
import pytest

from ..exterior.support import (BOX_SAMPLES, Box, SolidTorus, SupportRegion,
                                disjoint, rotate_region,
                                spacelike_separated, spatial_permutation,
                                translate_region)


def unit_box(shift=(0.0, 0.0, 0.0, 0.0), duration=1.0):
    lower = np.asarray(shift, dtype=float)
    upper = lower + np.array([duration, 1.0, 1.0, 1.0])
    return Box(tuple(lower), tuple(upper))


def hopf_tori(tube=0.2):
    first = SolidTorus((1, 2), (0.0, 0.0, 0.0, 0.0), 1.0, tube, 0.1)
    second = SolidTorus((1, 3), (0.0, 1.0, 0.0, 0.0), 1.0, tube, 0.1)
    return SupportRegion((first,)), SupportRegion((second,))


def test_box_rejects_inverted_corners():
    with pytest.raises(ValueError):
        Box((0.0, 1.0, 0.0, 0.0), (1.0, 0.0, 1.0, 1.0))


def test_box_distance():
    first = unit_box()
    second = unit_box((0.0, 3.0, 0.0, 0.0))
    assert first.distance_to_box(second) == pytest.approx(2.0)
    assert second.distance_to_box(first) == pytest.approx(2.0)
    assert first.distance_to_box(unit_box((0.0, 0.5, 0.5, 0.0))) == 0.0


def test_box_distance_to_points():
    points = np.array([[0.5, 0.5, 0.5], [2.0, 0.5, 0.5], [2.0, 2.0, 0.5]])
    assert np.allclose(unit_box().distance_to_points(points),
                       [0.0, 1.0, np.sqrt(2.0)])


def test_box_spatial_samples_cover_the_box():
    box = Box((0.0, -1.0, 0.0, 2.0), (1.0, 1.0, 0.5, 2.0))
    points, slack = box.spatial_samples()
    assert points.shape == (BOX_SAMPLES ** 3, 3)
    assert np.allclose(box.distance_to_points(points), 0.0)
    assert slack == pytest.approx(0.5 * np.hypot(2.0, 0.5)
                                  / (BOX_SAMPLES - 1))
    inside = np.random.default_rng(0).uniform(
        box.lower[1:], box.upper[1:], size=(200, 3))
    gaps = np.linalg.norm(inside[:, None, :] - points[None, :, :], axis=-1)
    assert np.all(gaps.min(axis=1) <= slack + 1e-12)


def test_boxes_spacelike():
    first = SupportRegion((unit_box(),))
    second = SupportRegion((unit_box((0.0, 3.0, 0.0, 0.0)),))
    assert spacelike_separated(first, second)
    later = SupportRegion((unit_box((0.0, 3.0, 0.0, 0.0), duration=3.0),))
    assert not spacelike_separated(first, later)
    assert disjoint(first, later)


def test_empty_region_is_spacelike():
    assert spacelike_separated(SupportRegion(), SupportRegion((unit_box(),)))


def test_hopf_tori():
    first, second = hopf_tori()
    assert spacelike_separated(first, second)
    assert disjoint(first, second)
    thick_first, thick_second = hopf_tori(tube=0.6)
    assert not disjoint(thick_first, thick_second)
    assert not spacelike_separated(thick_first, thick_second)


def test_torus_against_box():
    torus, _ = hopf_tori()
    far = SupportRegion((unit_box((0.0, 3.0, 0.0, 0.0)),))
    near = SupportRegion((unit_box((0.0, 0.9, -0.5, -0.5)),))
    assert spacelike_separated(torus, far)
    assert not disjoint(torus, near)


def test_torus_bounds():
    torus = SolidTorus((1, 2), (1.0, 0.0, 0.0, 0.0), 1.0, 0.2, 0.1)
    lower, upper = torus.bounds()
    assert np.allclose(lower, [0.9, -1.2, -1.2, -0.2])
    assert np.allclose(upper, [1.1, 1.2, 1.2, 0.2])
    assert torus.time_interval() == pytest.approx((0.9, 1.1))


def test_bounding_box():
    torus, _ = hopf_tori()
    region = torus + SupportRegion((unit_box((0.0, 3.0, 0.0, 0.0)),))
    box = region.bounding_box()
    assert np.allclose(box.lower, [-0.1, -1.2, -1.2, -0.2])
    assert np.allclose(box.upper, [1.0, 4.0, 1.2, 1.0])


def test_region_addition_keeps_distinct_primitives():
    first, second = hopf_tori()
    merged = first + second + first
    assert len(merged.primitives) == 2


def test_translation():
    first, _ = hopf_tori()
    moved = first.translated((0.0, 0.0, 5.0, 0.0))
    assert moved.primitives[0].center == pytest.approx((0.0, 0.0, 5.0, 0.0))
    assert spacelike_separated(first, moved)


def test_spatial_permutation():
    matrix = spatial_permutation((2, 3, 1), (1, 1, 1))
    assert np.allclose(matrix @ np.array([0.0, 1.0, 2.0, 3.0]),
                       [0.0, 2.0, 3.0, 1.0])
    assert np.isclose(np.linalg.det(matrix), 1.0)


@pytest.mark.parametrize('axes, signs', [
    ((1, 1, 3), (1, 1, 1)),
    ((1, 2, 3), (1, 1)),
    ((2, 1, 3), (1, 1, 1)),
])
def test_spatial_permutation_invalid(axes, signs):
    with pytest.raises(ValueError):
        spatial_permutation(axes, signs)


def test_torus_rotation():
    torus = SolidTorus((1, 2), (0.0, 1.0, 2.0, 3.0), 1.0, 0.2, 0.1)
    rotated = torus.rotated(spatial_permutation((2, 3, 1), (1, 1, 1)))
    assert rotated.plane == (3, 1)
    assert rotated.center == pytest.approx((0.0, 2.0, 3.0, 1.0))


def test_region_helpers_keep_separation():
    first, second = hopf_tori()
    rotation = spatial_permutation((3, 1, 2), (1, -1, -1))
    shift = (0.5, -2.0, 1.0, 4.0)
    moved = [rotate_region(translate_region(region, shift), rotation)
             for region in (first, second)]
    assert moved[0] == first.translated(shift).rotated(rotation)
    assert spacelike_separated(*moved)
    assert disjoint(*moved)
