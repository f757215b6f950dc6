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
Radial functions of the canonical loop family.

Given a profile b of the squared distance, supported near 0,

    c(r^2) = |r|^-1 int_0^1 dt cos(2 pi t) b(r^2 - 2 r cos(2 pi t) + 1),
    C(r^2) = - int_{r^2}^inf du c(u).

c lives on the band ||r| - 1| <= sqrt(u_b), u_b the upper end of the
support of b, and C is constant below the band and zero above it.
"""
import functools
import logging
import math
import threading
from typing import Dict, Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import j0

from ..exc import ConventionError, InvalidProfileError
from .cache import TransformCache, get_cache, on_cache_change
from .profiles import Profile1D, gauss_legendre

logger = logging.getLogger('topocharge')

RADIAL_KINDS = ('b', 'c', 'C')


def _check_source(b: Profile1D):
    if b.is_dirac:
        raise InvalidProfileError(
            "Radial profiles need a pointwise profile b, not dirac_limit")
    if b.width >= 1.0 or b.support_interval()[1] >= 1.0:
        raise ConventionError(
            "Radial source width {} would let the support band reach r = 0"
            .format(b.width))


def radial_band(b: Profile1D):
    """(u_lo, u_hi): the interval of r^2 outside which c vanishes."""
    _check_source(b)
    reach = math.sqrt(max(b.support_interval()[1], 0.0))
    return (1.0 - reach) ** 2, (1.0 + reach) ** 2


def radial_c(b: Profile1D, r2, order: int = 256) -> np.ndarray:
    """
    Direct evaluation of c(r^2) by Gauss-Legendre quadrature in the angle.
    :param b: profile of the squared distance
    :param r2: squared radius (scalar or array), must be >= 0
    :param order: number of quadrature nodes on the contributing arc
    :return: c values, same shape as r2
    """
    _check_source(b)
    r2 = np.asarray(r2, dtype=float)
    if np.any(r2 < 0):
        raise ValueError("radial_c needs r^2 >= 0")
    flat = np.atleast_1d(r2).ravel()
    result = np.zeros_like(flat)
    u_lo, u_hi = radial_band(b)
    reach = b.support_interval()[1]
    active = (flat > u_lo) & (flat < u_hi)
    if np.any(active):
        r = np.sqrt(flat[active])
        # arc on which r^2 + 1 - 2 r cos(theta) < u_b
        bound = np.clip((r ** 2 + 1.0 - reach) / (2.0 * r), -1.0, 1.0)
        theta_max = np.arccos(bound)
        nodes, weights = gauss_legendre(order, 0.0, 1.0)
        theta = np.outer(theta_max, nodes)
        u = r[:, None] ** 2 + 1.0 - 2.0 * r[:, None] * np.cos(theta)
        integrand = np.cos(theta) * b(u)
        # int_0^1 dt over the full circle = (1/pi) int_0^theta_max dtheta
        arc = theta_max * (integrand @ weights)
        result[active] = arc / (math.pi * r)
    return result.reshape(r2.shape) if r2.ndim else result[0]


def _hankel_2d(radius: np.ndarray, weights: np.ndarray, values: np.ndarray,
               q: np.ndarray) -> np.ndarray:
    """2 pi int rho f J0(q rho) drho on given nodes, blocked over q."""
    result = np.empty_like(q)
    block = 256
    weighted = 2.0 * math.pi * weights * radius * values
    for start in range(0, q.size, block):
        stop = min(start + block, q.size)
        result[start:stop] = j0(np.outer(q[start:stop], radius)) @ weighted
    return result


class RadialProfile:
    """
    Tabulated c and C for one source profile b, with their 2D Hankel
    transforms. c is stored as a clamped cubic spline in u = r^2; C is its
    exact antiderivative, so dC/du reproduces the c spline.
    """
    GRID_POINTS = 2001
    HANKEL_POINTS = 4097
    Q_MAX = 256.0
    HANKEL_ORDER = 1024

    def __init__(self, b: Profile1D, cache: Optional[TransformCache] = None):
        _check_source(b)
        self.source = b
        self.u_lo, self.u_hi = radial_band(b)
        self._cache = cache or get_cache()
        table = self._cache.get_or_compute(
            'radial', {'b': b.payload(), 'points': self.GRID_POINTS},
            self._compute_table)
        self._c = CubicSpline(table['u'], table['c'],
                              bc_type=((1, 0.0), (1, 0.0)))
        self._dc = self._c.derivative(1)
        self._d2c = self._c.derivative(2)
        self._primitive = self._c.antiderivative(1)
        self._total = float(self._primitive(self.u_hi))
        self._hankel: Dict[str, CubicSpline] = {}
        self._hankel_lock = threading.Lock()
        self._warned_qmax = False

    def _compute_table(self):
        u = np.linspace(self.u_lo, self.u_hi, self.GRID_POINTS)
        values = radial_c(self.source, u)
        values[0] = values[-1] = 0.0
        return {'u': u, 'c': values}

    @property
    def plateau(self) -> float:
        """Constant value of C below the band."""
        return -self._total

    @property
    def band(self):
        """(r_lo, r_hi) of the support band of c."""
        return math.sqrt(self.u_lo), math.sqrt(self.u_hi)

    def _piecewise(self, u, inside_fn, below: float) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        flat = np.atleast_1d(u)
        result = np.where(flat <= self.u_lo, below, 0.0)
        inside = (flat > self.u_lo) & (flat < self.u_hi)
        if np.any(inside):
            result[inside] = inside_fn(flat[inside])
        return result.reshape(u.shape)

    def c(self, u) -> np.ndarray:
        """c(u) from the table."""
        return self._piecewise(u, self._c, 0.0)

    def C(self, u) -> np.ndarray:  # pylint: disable=invalid-name
        """C(u) = -int_u^inf c."""
        return self._piecewise(
            u, lambda v: self._primitive(v) - self._total, self.plateau)

    def dc(self, u, order: int = 1) -> np.ndarray:
        """First or second u-derivative of c."""
        spline = self._dc if order == 1 else self._d2c
        return self._piecewise(u, spline, 0.0)

    def evaluate(self, kind: str, u, derivative: int = 0) -> np.ndarray:
        """
        Radial factor f(u) of the given kind or its u-derivatives.
        :param kind: 'b' (the source), 'c' or 'C'
        :param u: squared radius
        :param derivative: 0, 1 or 2
        """
        if kind == 'b':
            if derivative == 0:
                return self.source(u)
            return self.source.derivative(u, derivative)
        if kind == 'C':
            if derivative == 0:
                return self.C(u)
            return self.c(u) if derivative == 1 else self.dc(u, 1)
        if kind == 'c':
            if derivative == 0:
                return self.c(u)
            return self.dc(u, derivative)
        raise ValueError("Unknown radial kind {!r}".format(kind))

    def integral_2d(self, kind: str) -> float:
        """Integral over the plane of f(x_i^2 + x_k^2)."""
        return float(self.hankel(kind, np.zeros(1))[0])

    def _hankel_spline(self, kind: str) -> CubicSpline:
        with self._hankel_lock:
            if kind not in self._hankel:
                table = self._cache.get_or_compute(
                    'hankel-' + kind,
                    {'b': self.source.payload(), 'points': self.HANKEL_POINTS,
                     'q_max': self.Q_MAX, 'order': self.HANKEL_ORDER},
                    functools.partial(self._compute_hankel, kind))
                self._hankel[kind] = CubicSpline(
                    table['q'], table['values'],
                    bc_type=((1, 0.0), 'not-a-knot'))
            return self._hankel[kind]

    def _compute_hankel(self, kind: str):
        q = np.linspace(0.0, self.Q_MAX, self.HANKEL_POINTS)
        r_lo, r_hi = self.band
        order = self.HANKEL_ORDER
        if kind == 'b':
            reach = math.sqrt(self.source.support_interval()[1])
            radius, weights = gauss_legendre(order, 0.0, reach)
        elif kind == 'c':
            radius, weights = gauss_legendre(order, r_lo, r_hi)
        else:
            inner_r, inner_w = gauss_legendre(order, 0.0, r_lo)
            outer_r, outer_w = gauss_legendre(order, r_lo, r_hi)
            radius = np.concatenate([inner_r, outer_r])
            weights = np.concatenate([inner_w, outer_w])
        values = self.evaluate(kind, radius ** 2)
        return {'q': q, 'values': _hankel_2d(radius, weights, values, q)}

    def hankel(self, kind: str, q) -> np.ndarray:
        """2D Fourier transform of f(x_i^2 + x_k^2) at radial momentum q."""
        q = np.abs(np.asarray(q, dtype=float))
        spline = self._hankel_spline(kind)
        result = np.zeros_like(q)
        inside = q <= self.Q_MAX
        if not np.all(inside) and not self._warned_qmax:
            logger.warning("Radial momentum beyond tabulated range %.1f; "
                           "transform set to zero there", self.Q_MAX)
            self._warned_qmax = True
        result[inside] = spline(q[inside])
        return result


@functools.lru_cache(maxsize=128)
def radial_profile(b: Profile1D) -> RadialProfile:
    """Shared RadialProfile instance for a source profile, bound to the
    current transform cache."""
    return RadialProfile(b)


on_cache_change(radial_profile.cache_clear)


def radial_C(b: Profile1D, r2) -> np.ndarray:  # pylint: disable=invalid-name
    """C(r^2) for source profile b, from the cached table."""
    if np.any(np.asarray(r2) < 0):
        raise ValueError("radial_C needs r^2 >= 0")
    return radial_profile(b).C(r2)
