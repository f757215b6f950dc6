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
"""
Light-cone quadrature.

Integrals over the light cone are reduced to three-dimensional momentum
integrals,

    int d^4p eps(p_0) delta(p^2) M(p)
        = int d^3p (2 |p|)^-1 [M(|p|, p) - M(-|p|, p)],

and the theta(p_0) variant keeps only the first term. The 3D integral is
done in spherical coordinates: Gauss-Legendre panels in the radius and a
product rule on the sphere whose order grows with the panel's radius.
The error estimate is the difference to one refined rule.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, List, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from ..exterior.profiles import gauss_legendre

logger = logging.getLogger('topocharge')

COMMUTATOR = 'commutator'
POSITIVE = 'positive'
MODES = (COMMUTATOR, POSITIVE)

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Rule for the 3D momentum integral.
    :param r_max: radial cut-off |p| <= r_max
    :param panels: number of equal radial panels
    :param radial_order: Gauss-Legendre order per panel
    :param angular_order: extra polar nodes per unit of panel radius
    :param angular_min: polar nodes at the origin
    :param refinement: factor applied to panels and angular rule when
        refining
    :param r_max_growth: factor applied to r_max when refining
    :param tolerance: target error relative to the integral of |M|
    """
    r_max: float = 40.0
    panels: int = 24
    radial_order: int = 8
    angular_order: float = 1.5
    angular_min: int = 12
    refinement: int = 2
    r_max_growth: float = 1.25
    tolerance: float = 1e-3

    def __post_init__(self):
        if self.r_max <= 0 or self.panels < 1 or self.radial_order < 1:
            raise ValueError("Quadrature needs r_max > 0 and at least one "
                             "panel and node")
        if self.angular_min < 2 or self.angular_order < 0:
            raise ValueError("Angular rule needs angular_min >= 2 and "
                             "angular_order >= 0")
        if self.refinement < 2 or self.r_max_growth < 1:
            raise ValueError("Refinement must enlarge the rule")

    def refined(self) -> 'QuadratureSpec':
        """The rule used for the error estimate."""
        return replace(self, r_max=self.r_max * self.r_max_growth,
                       panels=self.panels * self.refinement,
                       angular_order=self.angular_order * self.refinement,
                       angular_min=self.angular_min * self.refinement)

    def polar_order(self, radius: float) -> int:
        """Gauss-Legendre order in cos(theta) for a panel ending at radius."""
        return self.angular_min + int(math.ceil(self.angular_order * radius))

    def panel_edges(self) -> np.ndarray:
        """Radial panel boundaries."""
        return np.linspace(0.0, self.r_max, self.panels + 1)

    def node_count(self) -> int:
        """Number of momentum nodes of the rule."""
        edges = self.panel_edges()
        return sum(self.radial_order * 2 * self.polar_order(r) ** 2
                   for r in edges[1:])


@dataclass(frozen=True)
class IntegralResult:
    """
    Quadrature value with the refinement error estimate.
    :param value: integral from the refined rule
    :param error_estimate: |refined - base|
    :param nodes_used: momentum nodes of both rules together
    :param converged: error_estimate within the QuadratureSpec tolerance
    :param magnitude: integral of |M|, the scale of the tolerance
    """
    value: Union[float, complex]
    error_estimate: float
    nodes_used: int
    converged: bool = True
    magnitude: float = 0.0

    @property
    def real(self) -> 'IntegralResult':
        """Real part, same error."""
        return replace(self, value=float(np.real(self.value)))

    @property
    def imag(self) -> 'IntegralResult':
        """Imaginary part, same error."""
        return replace(self, value=float(np.imag(self.value)))

    def conjugate(self) -> 'IntegralResult':
        """Complex conjugate, same error."""
        return replace(self, value=np.conj(self.value))

    def __add__(self, other: 'IntegralResult') -> 'IntegralResult':
        return IntegralResult(self.value + other.value,
                              self.error_estimate + other.error_estimate,
                              self.nodes_used + other.nodes_used,
                              self.converged and other.converged,
                              self.magnitude + other.magnitude)

    def __sub__(self, other: 'IntegralResult') -> 'IntegralResult':
        return self + other * -1.0

    def __mul__(self, factor) -> 'IntegralResult':
        return IntegralResult(self.value * factor,
                              self.error_estimate * abs(factor),
                              self.nodes_used, self.converged,
                              self.magnitude * abs(factor))

    __rmul__ = __mul__

    def __neg__(self) -> 'IntegralResult':
        return self * -1.0

    def is_zero(self, factor: float = 1.0) -> bool:
        """|value| within factor times the error estimate."""
        return abs(self.value) <= factor * self.error_estimate

    def is_nonzero(self, factor: float = 10.0) -> bool:
        """|value| above factor times the error estimate."""
        return abs(self.value) > factor * self.error_estimate


def pairwise_sum(values: np.ndarray) -> Union[float, complex]:
    """
    Sum by a balanced binary tree in a fixed order; the result depends only
    on the sequence of values.
    """
    values = np.asarray(values)
    if values.size == 0:
        return 0.0
    values = values.ravel()
    while values.size > 1:
        if values.size % 2:
            values = np.append(values, np.zeros(1, dtype=values.dtype))
        values = values[0::2] + values[1::2]
    return values[0].item()


def panel_nodes(spec: QuadratureSpec, index: int) \
        -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Momentum nodes of one radial panel.
    :return: (radius (N,), unit directions (N, 3), weights (N,)) where the
        weights include the light-cone factor r / 2 and the solid angle
    """
    edges = spec.panel_edges()
    lower, upper = edges[index], edges[index + 1]
    radius, radial_weights = gauss_legendre(spec.radial_order, lower, upper)
    polar = spec.polar_order(upper)
    cos_theta, polar_weights = gauss_legendre(polar, -1.0, 1.0)
    azimuths = 2 * polar
    phi = 2.0 * math.pi * np.arange(azimuths) / azimuths
    sin_theta = np.sqrt(1.0 - cos_theta ** 2)
    directions = np.stack([
        np.outer(sin_theta, np.cos(phi)).ravel(),
        np.outer(sin_theta, np.sin(phi)).ravel(),
        np.repeat(cos_theta, azimuths)], axis=-1)
    angular_weights = np.repeat(polar_weights, azimuths) \
        * (2.0 * math.pi / azimuths)
    count = directions.shape[0]
    all_radius = np.repeat(radius, count)
    all_directions = np.tile(directions, (radius.size, 1))
    weights = np.outer(0.5 * radius * radial_weights,
                       angular_weights).ravel()
    return all_radius, all_directions, weights


def _panel(integrand: Integrand, spec: QuadratureSpec, index: int,
           mode: str) -> Tuple[complex, float, int]:
    radius, directions, weights = panel_nodes(spec, index)
    momenta = np.empty((radius.size, 4))
    momenta[:, 0] = radius
    momenta[:, 1:] = radius[:, None] * directions
    values = np.asarray(integrand(momenta), dtype=complex)
    if mode == COMMUTATOR:
        momenta[:, 0] = -radius
        values = values - np.asarray(integrand(momenta), dtype=complex)
    return (pairwise_sum(weights * values),
            float(pairwise_sum(weights * np.abs(values))), radius.size)


def _integrate(integrand: Integrand, spec: QuadratureSpec, mode: str,
               threads: int) -> Tuple[complex, float, int]:
    jobs = (delayed(_panel)(integrand, spec, index, mode)
            for index in range(spec.panels))
    partials: List[Tuple[complex, float, int]] = list(
        Parallel(n_jobs=threads, prefer='threads')(jobs))
    value = pairwise_sum(np.array([p[0] for p in partials]))
    magnitude = pairwise_sum(np.array([p[1] for p in partials]))
    return value, float(magnitude), sum(p[2] for p in partials)


def lightcone_integrate(integrand: Integrand,
                        spec: QuadratureSpec = QuadratureSpec(),
                        mode: str = COMMUTATOR,
                        threads: int = 1) -> IntegralResult:
    """
    Integrate M over the light cone.
    :param integrand: M(p) for contravariant momenta (N, 4) -> (N,)
    :param spec: quadrature rule
    :param mode: 'commutator' for eps(p_0), 'positive' for theta(p_0)
    :param threads: worker threads for the radial panels
    :return: value of the refined rule with its error estimate; the
        result is flagged, never raised, when the estimate exceeds the
        tolerance
    """
    if mode not in MODES:
        raise ValueError("Unknown light-cone mode {!r}".format(mode))
    base, _, base_nodes = _integrate(integrand, spec, mode, threads)
    refined_spec = spec.refined()
    value, magnitude, refined_nodes = _integrate(
        integrand, refined_spec, mode, threads)
    error = abs(value - base)
    converged = error <= spec.tolerance * magnitude
    logger.debug("Light-cone %s integral: %d + %d nodes, value %r, "
                 "error %.3e", mode, base_nodes, refined_nodes, value, error)
    if not converged:
        logger.warning("Light-cone integral not converged: error %.3e "
                       "exceeds %.1e of magnitude %.3e", error,
                       spec.tolerance, magnitude)
    return IntegralResult(value, error, base_nodes + refined_nodes,
                          converged, magnitude)
