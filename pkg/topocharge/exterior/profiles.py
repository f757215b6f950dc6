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
One-dimensional scalar profiles.

A profile is amplitude * shape((x - center) / width) / (width * norm), where
the unit shape is either the compactly supported bump exp(-1/(1 - t^2)) or
the standard gaussian, and norm is the integral of the unit shape. The
amplitude is therefore always the total integral, and the dirac_limit kind
is the literal narrow-width limit of the other two.
"""
import functools
import logging
import math
from dataclasses import dataclass, replace
from typing import Any, Dict, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline

from ..exc import InvalidProfileError, NotDifferentiableError

logger = logging.getLogger('topocharge')

BUMP = 'bump'
GAUSSIAN = 'gaussian'
DIRAC_LIMIT = 'dirac_limit'
PROFILE_KINDS = (BUMP, GAUSSIAN, DIRAC_LIMIT)

# gaussians are treated as supported on center +- GAUSSIAN_TAIL * width
GAUSSIAN_TAIL = 6.0
# unit bump transform is tabulated on [0, BUMP_KAPPA_MAX] and zero beyond
BUMP_KAPPA_MAX = 400.0
BUMP_TABLE_POINTS = 4001


def gauss_legendre(order: int, lower: float, upper: float) \
        -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [lower, upper]."""
    nodes, weights = _legendre(order)
    half = 0.5 * (upper - lower)
    return lower + half * (nodes + 1.0), half * weights


@functools.lru_cache(maxsize=64)
def _legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _bump_shape(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    result = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    result[inside] = np.exp(-1.0 / (1.0 - t[inside] ** 2))
    return result


def _bump_shape_derivative(t: np.ndarray, order: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    result = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    one_minus = 1.0 - ti ** 2
    shape = np.exp(-1.0 / one_minus)
    # shape' = shape * g with g = -2t / (1 - t^2)^2
    g = -2.0 * ti / one_minus ** 2
    if order == 1:
        result[inside] = shape * g
    else:
        g_prime = -2.0 / one_minus ** 2 - 8.0 * ti ** 2 / one_minus ** 3
        result[inside] = shape * (g ** 2 + g_prime)
    return result


@functools.lru_cache(maxsize=1)
def bump_norm() -> float:
    """Integral of the unit bump exp(-1/(1 - t^2)) over [-1, 1]."""
    nodes, weights = gauss_legendre(512, -1.0, 1.0)
    return float(np.sum(weights * _bump_shape(nodes)))


@functools.lru_cache(maxsize=1)
def _bump_transform_table() -> CubicSpline:
    """Spline of the normalized unit bump transform on kappa >= 0."""
    kappa = np.linspace(0.0, BUMP_KAPPA_MAX, BUMP_TABLE_POINTS)
    nodes, weights = gauss_legendre(1024, 0.0, 1.0)
    integrand = weights * _bump_shape(nodes)
    values = 2.0 * np.cos(np.outer(kappa, nodes)) @ integrand / bump_norm()
    return CubicSpline(kappa, values, bc_type=((1, 0.0), 'not-a-knot'))


def unit_transform(kind: str, kappa: np.ndarray) -> np.ndarray:
    """Transform of the unit-width, unit-integral shape; real and even."""
    kappa = np.abs(np.asarray(kappa, dtype=float))
    if kind == DIRAC_LIMIT:
        return np.ones_like(kappa)
    if kind == GAUSSIAN:
        return np.exp(-0.5 * kappa ** 2)
    result = np.zeros_like(kappa)
    inside = kappa <= BUMP_KAPPA_MAX
    result[inside] = _bump_transform_table()(kappa[inside])
    return result


@dataclass(frozen=True)
class Profile1D:
    """
    Smooth scalar factor on the real line.
    :param kind: one of 'bump', 'gaussian', 'dirac_limit'
    :param center: center in length units
    :param width: bump half-width, gaussian standard deviation; must be > 0
    :param amplitude: total integral of the profile
    """
    kind: str = BUMP
    center: float = 0.0
    width: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise InvalidProfileError(
                "Unknown profile kind {!r}".format(self.kind))
        for name in ('center', 'width', 'amplitude'):
            if not math.isfinite(getattr(self, name)):
                raise InvalidProfileError(
                    "Profile {} must be finite".format(name))
        if self.width <= 0:
            raise InvalidProfileError(
                "Profile width must be positive, got {}".format(self.width))

    @property
    def is_dirac(self) -> bool:
        """True for the dirac_limit kind."""
        return self.kind == DIRAC_LIMIT

    @property
    def has_tails(self) -> bool:
        """True when the support is only effective (gaussian tails)."""
        return self.kind == GAUSSIAN

    def support_radius(self) -> float:
        """Half-length of the (effective) support interval."""
        if self.kind == BUMP:
            return self.width
        if self.kind == GAUSSIAN:
            return GAUSSIAN_TAIL * self.width
        return 0.0

    def support_interval(self) -> Tuple[float, float]:
        """(lower, upper) end of the (effective) support."""
        radius = self.support_radius()
        return self.center - radius, self.center + radius

    def _norm(self) -> float:
        if self.kind == BUMP:
            return bump_norm()
        return math.sqrt(2.0 * math.pi)

    def _scaled(self, x) -> np.ndarray:
        if self.is_dirac:
            raise InvalidProfileError(
                "dirac_limit profiles have no pointwise values")
        return (np.asarray(x, dtype=float) - self.center) / self.width

    def __call__(self, x) -> np.ndarray:
        t = self._scaled(x)
        prefactor = self.amplitude / (self.width * self._norm())
        if self.kind == BUMP:
            return prefactor * _bump_shape(t)
        return prefactor * np.exp(-0.5 * t ** 2)

    def derivative(self, x, order: int = 1) -> np.ndarray:
        """First or second derivative in x."""
        if self.is_dirac:
            raise NotDifferentiableError(
                "dirac_limit profiles cannot be differentiated in position "
                "space")
        if order not in (1, 2):
            raise ValueError("Only first and second derivatives available")
        t = self._scaled(x)
        prefactor = self.amplitude / (self.width ** (order + 1) * self._norm())
        if self.kind == BUMP:
            return prefactor * _bump_shape_derivative(t, order)
        gauss = np.exp(-0.5 * t ** 2)
        if order == 1:
            return prefactor * (-t * gauss)
        return prefactor * (t ** 2 - 1.0) * gauss

    def fourier(self, omega) -> np.ndarray:
        """Integral of exp(i omega x) times the profile."""
        omega = np.asarray(omega, dtype=float)
        phase = np.exp(1j * omega * self.center)
        return self.amplitude * phase * unit_transform(
            self.kind, omega * self.width)

    def integral(self) -> float:
        """Total integral; equal to the amplitude by construction."""
        return self.amplitude

    def translated(self, shift: float) -> 'Profile1D':
        """Profile moved by shift."""
        return replace(self, center=self.center + shift)

    def reflected(self) -> 'Profile1D':
        """Profile of -x (all shapes are even)."""
        return replace(self, center=-self.center)

    def scaled(self, factor: float) -> 'Profile1D':
        """Profile with amplitude multiplied by factor."""
        return replace(self, amplitude=self.amplitude * factor)

    def payload(self) -> Dict[str, Any]:
        """JSON-serializable description, used for hashing."""
        return {'kind': self.kind, 'center': repr(float(self.center)),
                'width': repr(float(self.width)),
                'amplitude': repr(float(self.amplitude))}


def profile_fourier(profile: Profile1D, omega, direct: bool = False):
    """
    Integral of exp(i omega x) profile(x) dx.

    By default uses the tabulated unit transform. With direct=True the
    integral is computed by Gauss-Legendre quadrature over the support,
    which is the reference the tables are checked against.
    """
    if not direct or profile.is_dirac:
        return profile.fourier(omega)
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    lower, upper = profile.support_interval()
    nodes, weights = gauss_legendre(2048, lower, upper)
    kernel = np.exp(1j * np.outer(omega, nodes))
    result = kernel @ (weights * profile(nodes))
    return result if result.size > 1 else result[0]


def profile_derivative(profile: Profile1D, x, order: int = 1) -> np.ndarray:
    """Analytic first or second derivative of a bump or gaussian profile."""
    return profile.derivative(x, order)
