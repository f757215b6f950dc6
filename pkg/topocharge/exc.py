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
"""Exception hierarchy used throughout topocharge."""


class TopochargeException(Exception):
    """Base class for all topocharge errors."""


class InvalidProfileError(TopochargeException, ValueError):
    """Profile parameters are invalid, or a dirac_limit profile was
    evaluated pointwise."""


class ConventionError(TopochargeException, ValueError):
    """Input violates a fixed convention, e.g. a radial profile whose
    support band would reach the origin."""


class NotDifferentiableError(TopochargeException):
    """Position-space derivative requested for a factor that has none."""


class InvalidLoopError(TopochargeException, ValueError):
    """Loop is not closed or its parameters are meaningless."""


class GeometryError(TopochargeException):
    """Geometric precondition failed (intersecting loops, overlapping
    pieces, linking number not near an integer)."""


class AmbiguousTypeError(TopochargeException):
    """Type indicator too close to zero to select a branch."""

    def __init__(self, label: str, indicator: float):
        super().__init__(
            "Piece {} has near-null type indicator {:.3e}; neither electric "
            "nor magnetic branch applies".format(label, indicator))
        self.label = label
        self.indicator = indicator


class UnsupportedSurfaceError(TopochargeException):
    """Spanning surface requested for a loop that is not a planar circle."""


class PositivityViolationError(TopochargeException):
    """Quadratic form is negative beyond its error estimate."""


class ConfigError(TopochargeException):
    """Experiment configuration could not be read or validated."""
