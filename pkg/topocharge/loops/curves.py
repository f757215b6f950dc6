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
"""Closed parametrized curves in Minkowski space."""
import abc
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np

from ..exc import InvalidLoopError
from ..exterior.conventions import SPATIAL

logger = logging.getLogger('topocharge')

# samples used for closure, extent and spacelike checks
CHECK_SAMPLES = 257
CLOSURE_TOLERANCE = 1e-9


class ParametricLoop(abc.ABC):
    """
    Periodic map t in [0, 1] -> gamma(t) in R^4 together with its
    derivative. Positions and velocities are contravariant 4-vectors.
    """

    @abc.abstractmethod
    def position(self, t: np.ndarray) -> np.ndarray:
        """gamma(t), shape (N, 4)."""

    @abc.abstractmethod
    def velocity(self, t: np.ndarray) -> np.ndarray:
        """d gamma / dt, shape (N, 4)."""

    @abc.abstractmethod
    def translated(self, shift) -> 'ParametricLoop':
        """Loop moved by a 4-vector."""

    @abc.abstractmethod
    def rotated(self, rotation: np.ndarray) -> 'ParametricLoop':
        """Loop under a spatial signed axis permutation."""

    @property
    def windings(self) -> int:
        """How many times the image is traversed; 1 for generic curves."""
        return 1

    def check_closed(self):
        """
        :raises InvalidLoopError: if gamma(0) != gamma(1)
        """
        ends = self.position(np.array([0.0, 1.0]))
        gap = float(np.max(np.abs(ends[1] - ends[0])))
        if gap > CLOSURE_TOLERANCE * max(1.0, self.extent()):
            raise InvalidLoopError(
                "Loop is not closed: |gamma(1) - gamma(0)| = {:.3e}"
                .format(gap))

    def samples(self, count: int = CHECK_SAMPLES) -> np.ndarray:
        """Positions at count equally spaced parameters (endpoint excluded)."""
        return self.position(np.arange(count) / count)

    def extent(self) -> float:
        """Largest spatial distance of the curve from its centroid."""
        points = self.samples()[:, 1:]
        centroid = points.mean(axis=0)
        return float(np.max(np.linalg.norm(points - centroid, axis=-1)))

    def is_constant_time(self, tol: float = 1e-12) -> bool:
        """True if the loop lies in one time slice."""
        return float(np.ptp(self.samples()[:, 0])) <= tol

    @property
    def spacelike(self) -> bool:
        """All point pairs on the loop spacelike to each other or equal."""
        if self.is_constant_time():
            return True
        points = self.samples()
        diff = points[:, None, :] - points[None, :, :]
        spatial = np.linalg.norm(diff[..., 1:], axis=-1)
        temporal = np.abs(diff[..., 0])
        off_diagonal = ~np.eye(len(points), dtype=bool)
        return bool(np.all(spatial[off_diagonal] > temporal[off_diagonal]))


class CircleLoop(ParametricLoop):
    """
    gamma(t) = center + radius (cos(2 pi n t) e_i + sin(2 pi n t) e_k),
    a circle in the spatial plane (i, k) traversed n times.
    """

    def __init__(self, plane: Tuple[int, int] = (1, 2), radius: float = 1.0,
                 center=(0.0, 0.0, 0.0, 0.0), traversal: int = 1):
        plane = (int(plane[0]), int(plane[1]))
        if plane[0] == plane[1] or not set(plane) <= set(SPATIAL):
            raise InvalidLoopError(
                "Circle plane must be two distinct spatial axes, got {}"
                .format(plane))
        if not radius > 0 or not math.isfinite(radius):
            raise InvalidLoopError(
                "Circle radius must be positive, got {}".format(radius))
        if int(traversal) != traversal or traversal == 0:
            raise InvalidLoopError(
                "Traversal count must be a nonzero integer, got {}"
                .format(traversal))
        self.plane = plane
        self.radius = float(radius)
        self.center = np.asarray(center, dtype=float)
        if self.center.shape != (4,):
            raise InvalidLoopError("Circle center must be a 4-vector")
        self.traversal = int(traversal)

    @property
    def windings(self):
        return abs(self.traversal)

    @property
    def normal_axis(self) -> int:
        """Spatial axis orthogonal to the plane."""
        return (set(SPATIAL) - set(self.plane)).pop()

    def _angle(self, t):
        return 2.0 * math.pi * self.traversal * np.asarray(t, dtype=float)

    def position(self, t):
        angle = np.atleast_1d(self._angle(t))
        result = np.tile(self.center, (angle.size, 1))
        i, k = self.plane
        result[:, i] += self.radius * np.cos(angle)
        result[:, k] += self.radius * np.sin(angle)
        return result

    def velocity(self, t):
        angle = np.atleast_1d(self._angle(t))
        speed = 2.0 * math.pi * self.traversal * self.radius
        result = np.zeros((angle.size, 4))
        i, k = self.plane
        result[:, i] = -speed * np.sin(angle)
        result[:, k] = speed * np.cos(angle)
        return result

    def extent(self):
        return self.radius

    def is_constant_time(self, tol=1e-12):
        return True

    def translated(self, shift):
        return CircleLoop(self.plane, self.radius,
                          self.center + np.asarray(shift, dtype=float),
                          self.traversal)

    def rotated(self, rotation):
        """
        Image under a signed axis permutation. The orientation follows the
        signs of the in-plane axes; the starting point may move, which no
        loop integral sees.
        """
        images = []
        for axis in self.plane:
            unit = np.zeros(4)
            unit[axis] = 1.0
            image = rotation @ unit
            new_axis = int(np.argmax(np.abs(image)))
            images.append((new_axis, float(np.sign(image[new_axis]))))
        (axis_i, sign_i), (axis_k, sign_k) = images
        traversal = self.traversal if sign_i * sign_k > 0 \
            else -self.traversal
        return CircleLoop((axis_i, axis_k), self.radius,
                          rotation @ self.center, traversal)

    def traversed(self, count: int) -> 'CircleLoop':
        """Same circle with another traversal count."""
        return CircleLoop(self.plane, self.radius, self.center, count)

    def __repr__(self):
        return 'CircleLoop(plane={}, radius={}, center={}, traversal={})' \
            .format(self.plane, self.radius, list(self.center),
                    self.traversal)


class CurveLoop(ParametricLoop):
    """Loop given by position and velocity callables, e.g. for linking
    number checks on curves that are not circles."""

    def __init__(self, position: Callable[[np.ndarray], np.ndarray],
                 velocity: Callable[[np.ndarray], np.ndarray],
                 label: Optional[str] = None):
        self._position = position
        self._velocity = velocity
        self.label = label or 'curve'
        self.check_closed()

    def position(self, t):
        return np.atleast_2d(self._position(np.atleast_1d(
            np.asarray(t, dtype=float))))

    def velocity(self, t):
        return np.atleast_2d(self._velocity(np.atleast_1d(
            np.asarray(t, dtype=float))))

    def translated(self, shift):
        shift = np.asarray(shift, dtype=float)
        return CurveLoop(lambda t: self.position(t) + shift, self.velocity,
                         self.label)

    def rotated(self, rotation):
        return CurveLoop(lambda t: self.position(t) @ rotation.T,
                         lambda t: self.velocity(t) @ rotation.T, self.label)
