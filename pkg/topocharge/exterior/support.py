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
"""Support geometry: boxes, solid tori and the spacelike separation test."""
import abc
import math
from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

import numpy as np

# samples on a torus core circle used for distance bounds
CORE_SAMPLES = 720
# grid nodes per spatial axis of a box
BOX_SAMPLES = 9


def spatial_permutation(axes: Sequence[int], signs: Sequence[int]) \
        -> np.ndarray:
    """4x4 matrix of a spatial rotation by signed axis permutation:
    new spatial axis j takes old axis axes[j] times signs[j]."""
    if sorted(axes) != [1, 2, 3] or len(signs) != 3:
        raise ValueError("Need a permutation of (1, 2, 3) with three signs")
    matrix = np.zeros((4, 4))
    matrix[0, 0] = 1.0
    for new_axis, (old_axis, sign) in enumerate(zip(axes, signs), start=1):
        matrix[new_axis, old_axis] = sign
    if not math.isclose(np.linalg.det(matrix), 1.0):
        raise ValueError("Axis permutation is not a proper rotation")
    return matrix


class Primitive(abc.ABC):
    """Abstract geometric building block of a support region."""

    @abc.abstractmethod
    def time_interval(self) -> Tuple[float, float]:
        """Earliest and latest time coordinate."""

    @abc.abstractmethod
    def translated(self, shift: np.ndarray) -> 'Primitive':
        """Primitive moved by a 4-vector."""

    @abc.abstractmethod
    def rotated(self, rotation: np.ndarray) -> 'Primitive':
        """Primitive under a spatial axis permutation matrix."""

    @abc.abstractmethod
    def spatial_samples(self) -> Tuple[np.ndarray, float]:
        """Spatial points (N, 3) and a slack such that every spatial point
        of the primitive lies within the slack of some sample."""

    @abc.abstractmethod
    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        """Lower and upper corner of an enclosing 4-box."""


@dataclass(frozen=True)
class Box(Primitive):
    """Axis-aligned 4-box [lower, upper] in (t, x1, x2, x3)."""
    lower: Tuple[float, float, float, float]
    upper: Tuple[float, float, float, float]

    def __post_init__(self):
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("Box lower corner exceeds upper corner")

    def time_interval(self):
        return self.lower[0], self.upper[0]

    def translated(self, shift):
        shift = np.asarray(shift, dtype=float)
        return Box(tuple(np.asarray(self.lower) + shift),
                   tuple(np.asarray(self.upper) + shift))

    def rotated(self, rotation):
        corners = rotation @ np.array([self.lower, self.upper]).T
        return Box(tuple(corners.min(axis=1)), tuple(corners.max(axis=1)))

    def spatial_samples(self):
        axes = [np.linspace(low, high, BOX_SAMPLES)
                for low, high in zip(self.lower[1:], self.upper[1:])]
        points = np.stack(np.meshgrid(*axes, indexing='ij'),
                          axis=-1).reshape(-1, 3)
        cell = (np.asarray(self.upper[1:]) - np.asarray(self.lower[1:])) \
            / (BOX_SAMPLES - 1)
        return points, 0.5 * float(np.linalg.norm(cell))

    def bounds(self):
        return np.asarray(self.lower, dtype=float), np.asarray(
            self.upper, dtype=float)

    def distance_to_points(self, points: np.ndarray) -> np.ndarray:
        """Euclidean distance from spatial points (N, 3) to the box."""
        lower = np.asarray(self.lower[1:])
        upper = np.asarray(self.upper[1:])
        gap = np.maximum(np.maximum(lower - points, points - upper), 0.0)
        return np.linalg.norm(gap, axis=-1)

    def distance_to_box(self, other: 'Box') -> float:
        """Spatial distance between two boxes."""
        lower_a, upper_a = np.asarray(self.lower[1:]), np.asarray(
            self.upper[1:])
        lower_b, upper_b = np.asarray(other.lower[1:]), np.asarray(
            other.upper[1:])
        gap = np.maximum(np.maximum(lower_b - upper_a, lower_a - upper_b), 0)
        return float(np.linalg.norm(gap))


@dataclass(frozen=True)
class SolidTorus(Primitive):
    """
    Solid torus around the circle of given radius in the spatial plane
    (i, k), centred at center (a 4-vector whose time component is the
    middle of the time extent).
    """
    plane: Tuple[int, int]
    center: Tuple[float, float, float, float]
    radius: float
    tube: float
    half_time: float

    def time_interval(self):
        return (self.center[0] - self.half_time,
                self.center[0] + self.half_time)

    def translated(self, shift):
        return SolidTorus(self.plane,
                          tuple(np.asarray(self.center) + np.asarray(shift)),
                          self.radius, self.tube, self.half_time)

    def rotated(self, rotation):
        axes = []
        for axis in self.plane:
            unit = np.zeros(4)
            unit[axis] = 1.0
            axes.append(int(np.argmax(np.abs(rotation @ unit))))
        return SolidTorus(tuple(axes), tuple(rotation @ np.asarray(
            self.center)), self.radius, self.tube, self.half_time)

    def spatial_samples(self):
        angles = np.linspace(0.0, 2.0 * math.pi, CORE_SAMPLES, endpoint=False)
        points = np.tile(np.asarray(self.center[1:], dtype=float),
                         (CORE_SAMPLES, 1))
        i, k = self.plane
        points[:, i - 1] += self.radius * np.cos(angles)
        points[:, k - 1] += self.radius * np.sin(angles)
        # half the arc between neighbouring samples bounds the sampling gap
        slack = self.radius * math.pi / CORE_SAMPLES + self.tube
        return points, slack

    def bounds(self):
        reach = np.full(4, self.tube)
        reach[0] = self.half_time
        for axis in self.plane:
            reach[axis] += self.radius
        center = np.asarray(self.center, dtype=float)
        return center - reach, center + reach


def _spatial_lower_bound(first: Primitive, second: Primitive) -> float:
    if isinstance(first, Box) and isinstance(second, Box):
        return first.distance_to_box(second)
    if isinstance(first, Box):
        first, second = second, first
    points, slack = first.spatial_samples()
    if isinstance(second, Box):
        return float(second.distance_to_points(points).min()) - slack
    other_points, other_slack = second.spatial_samples()
    diff = points[:, None, :] - other_points[None, :, :]
    distance = float(np.sqrt(np.min(np.sum(diff ** 2, axis=-1))))
    return distance - slack - other_slack


def _max_time_gap(first: Primitive, second: Primitive) -> float:
    start_a, end_a = first.time_interval()
    start_b, end_b = second.time_interval()
    return max(end_a - start_b, end_b - start_a)


@dataclass(frozen=True)
class SupportRegion:
    """Union of boxes and solid tori."""
    primitives: Tuple[Union[Box, SolidTorus], ...] = field(
        default_factory=tuple)

    def __add__(self, other: 'SupportRegion') -> 'SupportRegion':
        merged = list(self.primitives)
        merged.extend(p for p in other.primitives if p not in merged)
        return SupportRegion(tuple(merged))

    def translated(self, shift) -> 'SupportRegion':
        """Region moved by a 4-vector."""
        return SupportRegion(tuple(p.translated(shift)
                                   for p in self.primitives))

    def rotated(self, rotation: np.ndarray) -> 'SupportRegion':
        """Region under a spatial axis permutation matrix."""
        return SupportRegion(tuple(p.rotated(rotation)
                                   for p in self.primitives))

    def bounding_box(self) -> Box:
        """Smallest 4-box enclosing the bounds of all primitives."""
        corners = [p.bounds() for p in self.primitives]
        return Box(tuple(np.min([c[0] for c in corners], axis=0)),
                   tuple(np.max([c[1] for c in corners], axis=0)))

    def time_interval(self) -> Tuple[float, float]:
        """Time extent of the whole region."""
        intervals = [p.time_interval() for p in self.primitives]
        return (min(i[0] for i in intervals), max(i[1] for i in intervals))


def translate_region(region: SupportRegion, shift) -> SupportRegion:
    """Region moved by a 4-vector."""
    return region.translated(shift)


def rotate_region(region: SupportRegion,
                  rotation: np.ndarray) -> SupportRegion:
    """Region under a spatial axis permutation matrix."""
    return region.rotated(rotation)


def spacelike_separated(first: SupportRegion, second: SupportRegion) -> bool:
    """
    Conservative test: True only if every point pair across the two regions
    is spacelike, i.e. the spatial distance exceeds the time difference.
    """
    if not first.primitives or not second.primitives:
        return True
    for prim_a in first.primitives:
        for prim_b in second.primitives:
            if _spatial_lower_bound(prim_a, prim_b) <= \
                    _max_time_gap(prim_a, prim_b):
                return False
    return True


def disjoint(first: SupportRegion, second: SupportRegion) -> bool:
    """Conservative test that two regions do not intersect."""
    for prim_a in first.primitives:
        for prim_b in second.primitives:
            start_a, end_a = prim_a.time_interval()
            start_b, end_b = prim_b.time_interval()
            if end_a < start_b or end_b < start_a:
                continue
            if _spatial_lower_bound(prim_a, prim_b) <= 0.0:
                return False
    return True
