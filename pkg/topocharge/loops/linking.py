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
"""Gauss linking number of two closed spatial curves."""
import logging
import math
from typing import NamedTuple

import numpy as np

from ..exc import GeometryError
from .curves import ParametricLoop

logger = logging.getLogger('topocharge')

LINKING_NODES = 512
INTEGER_TOLERANCE = 0.01
TIME_TOLERANCE = 1e-12


class Linking(NamedTuple):
    """Rounded linking number with the raw double integral."""
    number: int
    raw: float


def linking_integral(first: ParametricLoop, second: ParametricLoop,
                     nodes: int = LINKING_NODES) -> float:
    """
    (4 pi)^-1 int int (g1 - g2) . (g1' x g2') / |g1 - g2|^3 dt ds by the
    periodic trapezoid rule in both parameters.
    :raises GeometryError: if the loops are not at one common time or
        their images touch
    """
    t = np.arange(nodes * max(first.windings, 1)) \
        / (nodes * max(first.windings, 1))
    s = np.arange(nodes * max(second.windings, 1)) \
        / (nodes * max(second.windings, 1))
    points_1, points_2 = first.position(t), second.position(s)
    times = np.concatenate([points_1[:, 0], points_2[:, 0]])
    if np.ptp(times) > TIME_TOLERANCE:
        raise GeometryError("Linking number needs both loops at one time")
    tangent_1 = first.velocity(t)[:, 1:]
    tangent_2 = second.velocity(s)[:, 1:]
    diff = points_1[:, None, 1:] - points_2[None, :, 1:]
    distance = np.linalg.norm(diff, axis=-1)
    spacing = 2.0 * math.pi * max(first.extent(), second.extent()) / nodes
    if float(distance.min()) < spacing:
        raise GeometryError(
            "Loops intersect or come closer than the sampling resolution "
            "({:.3e})".format(float(distance.min())))
    cross = np.cross(tangent_1[:, None, :], tangent_2[None, :, :])
    integrand = np.sum(diff * cross, axis=-1) / distance ** 3
    return float(integrand.mean() / (4.0 * math.pi))


def gauss_linking(first: ParametricLoop, second: ParametricLoop,
                  nodes: int = LINKING_NODES) -> Linking:
    """
    Linking number of two loops at equal time.
    :raises GeometryError: if the raw value is not within 0.01 of an
        integer, or the loops intersect
    """
    raw = linking_integral(first, second, nodes)
    number = int(round(raw))
    if abs(raw - number) >= INTEGER_TOLERANCE:
        raise GeometryError(
            "Linking integral {:.6f} is not close to an integer".format(raw))
    logger.debug("Linking number %d (raw %.12f)", number, raw)
    return Linking(number, raw)
