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
"""Scalar test functions on R^4 built from profiles."""
import abc
import math
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from .profiles import Profile1D
from .radial import RADIAL_KINDS, RadialProfile, radial_profile
from .support import Box, SolidTorus, SupportRegion


class ScalarFunction(abc.ABC):
    """
    Abstract real scalar function on Minkowski space with analytic
    derivatives and a momentum-space evaluator. Positions x and momenta p
    are arrays of contravariant 4-vectors with shape (N, 4).
    """

    @abc.abstractmethod
    def value(self, x: np.ndarray) -> np.ndarray:
        """Values at points, shape (N,)."""

    @abc.abstractmethod
    def gradient(self, x: np.ndarray) -> np.ndarray:
        """d_mu f, shape (N, 4)."""

    @abc.abstractmethod
    def hessian(self, x: np.ndarray) -> np.ndarray:
        """d_mu d_nu f, shape (N, 4, 4)."""

    @abc.abstractmethod
    def fourier(self, p: np.ndarray) -> np.ndarray:
        """int dx exp(i p.x) f(x), shape (N,)."""

    @abc.abstractmethod
    def integral(self) -> float:
        """int dx f(x)."""

    @abc.abstractmethod
    def support(self) -> SupportRegion:
        """Region containing the (effective) support."""

    @abc.abstractmethod
    def translated(self, shift: np.ndarray) -> 'ScalarFunction':
        """Function of x - shift."""

    @abc.abstractmethod
    def rotated(self, rotation: np.ndarray) -> 'ScalarFunction':
        """Function of R^-1 x for a signed axis permutation R."""

    @abc.abstractmethod
    def scaled(self, factor: float) -> 'ScalarFunction':
        """Function multiplied by factor."""

    @property
    def has_tails(self) -> bool:
        """True when some factor is a gaussian."""
        return False

    @property
    def is_differentiable(self) -> bool:
        """False when position derivatives hit a dirac_limit factor."""
        return True

    def payload(self) -> Dict[str, Any]:
        """JSON-serializable description."""
        return {'type': type(self).__name__}


def axis_image(rotation: np.ndarray, axis: int) -> Tuple[int, float]:
    """New axis and sign that old axis is mapped to by a permutation."""
    unit = np.zeros(4)
    unit[axis] = 1.0
    image = rotation @ unit
    new_axis = int(np.argmax(np.abs(image)))
    return new_axis, float(np.sign(image[new_axis]))


class ProductScalar(ScalarFunction):
    """s(x) = f_0(x^0) f_1(x^1) f_2(x^2) f_3(x^3)."""

    def __init__(self, factors: Sequence[Profile1D]):
        if len(factors) != 4:
            raise ValueError("ProductScalar needs four factors")
        self.factors: Tuple[Profile1D, ...] = tuple(factors)

    def _columns(self, x: np.ndarray, order: int = 0) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        columns = []
        for mu, factor in enumerate(self.factors):
            if order == 0:
                columns.append(factor(x[:, mu]))
            else:
                columns.append(factor.derivative(x[:, mu], order))
        return np.stack(columns, axis=-1)

    def value(self, x):
        return np.prod(self._columns(x), axis=-1)

    def gradient(self, x):
        values = self._columns(x)
        first = self._columns(x, 1)
        result = np.empty_like(values)
        for mu in range(4):
            others = np.prod(np.delete(values, mu, axis=-1), axis=-1)
            result[:, mu] = first[:, mu] * others
        return result

    def hessian(self, x):
        values = self._columns(x)
        first = self._columns(x, 1)
        second = self._columns(x, 2)
        count = values.shape[0]
        result = np.empty((count, 4, 4))
        for mu in range(4):
            for nu in range(mu, 4):
                rest = np.prod(np.delete(values, [mu, nu], axis=-1), axis=-1)
                if mu == nu:
                    entry = second[:, mu] * rest
                else:
                    entry = first[:, mu] * first[:, nu] * rest
                result[:, mu, nu] = result[:, nu, mu] = entry
        return result

    def fourier(self, p):
        p = np.atleast_2d(np.asarray(p, dtype=float))
        result = self.factors[0].fourier(p[:, 0])
        for j in (1, 2, 3):
            result = result * self.factors[j].fourier(-p[:, j])
        return result

    def integral(self):
        return float(np.prod([f.integral() for f in self.factors]))

    def support(self):
        intervals = [f.support_interval() for f in self.factors]
        return SupportRegion((Box(tuple(i[0] for i in intervals),
                                  tuple(i[1] for i in intervals)),))

    def translated(self, shift):
        return ProductScalar([f.translated(float(s))
                              for f, s in zip(self.factors, shift)])

    def rotated(self, rotation):
        new_factors = list(self.factors)
        for axis in (1, 2, 3):
            new_axis, sign = axis_image(rotation, axis)
            factor = self.factors[axis]
            new_factors[new_axis] = factor if sign > 0 else factor.reflected()
        return ProductScalar(new_factors)

    def scaled(self, factor):
        return ProductScalar([self.factors[0].scaled(factor)]
                             + list(self.factors[1:]))

    @property
    def has_tails(self):
        return any(f.has_tails for f in self.factors)

    @property
    def is_differentiable(self):
        return not any(f.is_dirac for f in self.factors)

    def payload(self):
        return {'type': 'product', 'factors': [f.payload()
                                               for f in self.factors]}


class AxialScalar(ScalarFunction):
    """
    s(x) = alpha(x^0 - y^0) beta(x^l - y^l) f((x^i - y^i)^2 + (x^k - y^k)^2)

    with f one of the radial factors b, c, C of a RadialProfile and y an
    offset. This is the a(x_0, x_l) f(x_i^2 + x_k^2) structure of the
    canonical loop family.
    """

    def __init__(self, time: Profile1D, axial: Profile1D,
                 radial: Profile1D, kind: str, plane: Tuple[int, int],
                 axis: int, offset=(0.0, 0.0, 0.0, 0.0), scale: float = 1.0):
        if kind not in RADIAL_KINDS:
            raise ValueError("Unknown radial kind {!r}".format(kind))
        if sorted((plane[0], plane[1], axis)) != [1, 2, 3]:
            raise ValueError("Plane and axis must partition (1, 2, 3)")
        self.time = time
        self.axial = axial
        self.radial_source = radial
        self.kind = kind
        self.plane = (int(plane[0]), int(plane[1]))
        self.axis = int(axis)
        self.offset = np.asarray(offset, dtype=float)
        self.scale = float(scale)

    @property
    def radial(self) -> RadialProfile:
        """Tabulated radial functions of the source profile."""
        return radial_profile(self.radial_source)

    def _parts(self, x: np.ndarray):
        x = np.atleast_2d(np.asarray(x, dtype=float)) - self.offset
        i, k = self.plane
        return x, x[:, 0], x[:, self.axis], x[:, i], x[:, k]

    def value(self, x):
        _, t, z, xi, xk = self._parts(x)
        radial = self.radial.evaluate(self.kind, xi ** 2 + xk ** 2)
        return self.scale * self.time(t) * self.axial(z) * radial

    def gradient(self, x):
        x, t, z, xi, xk = self._parts(x)
        u = xi ** 2 + xk ** 2
        alpha, beta = self.time(t), self.axial(z)
        f = self.radial.evaluate(self.kind, u)
        df = self.radial.evaluate(self.kind, u, 1)
        result = np.zeros_like(x)
        i, k = self.plane
        result[:, 0] = self.time.derivative(t) * beta * f
        result[:, self.axis] = alpha * self.axial.derivative(z) * f
        result[:, i] = alpha * beta * 2.0 * xi * df
        result[:, k] = alpha * beta * 2.0 * xk * df
        return self.scale * result

    def hessian(self, x):
        x, t, z, xi, xk = self._parts(x)
        u = xi ** 2 + xk ** 2
        i, k, axis = self.plane[0], self.plane[1], self.axis
        alpha, beta = self.time(t), self.axial(z)
        dalpha, dbeta = self.time.derivative(t), self.axial.derivative(z)
        f = self.radial.evaluate(self.kind, u)
        df = self.radial.evaluate(self.kind, u, 1)
        d2f = self.radial.evaluate(self.kind, u, 2)
        planar = {i: xi, k: xk}
        result = np.zeros((x.shape[0], 4, 4))

        def put(mu, nu, entry):
            result[:, mu, nu] = result[:, nu, mu] = entry

        put(0, 0, self.time.derivative(t, 2) * beta * f)
        put(axis, axis, alpha * self.axial.derivative(z, 2) * f)
        put(0, axis, dalpha * dbeta * f)
        for a, xa in planar.items():
            put(0, a, dalpha * beta * 2.0 * xa * df)
            put(axis, a, alpha * dbeta * 2.0 * xa * df)
            put(a, a, alpha * beta * (2.0 * df + 4.0 * xa ** 2 * d2f))
        put(i, k, alpha * beta * 4.0 * xi * xk * d2f)
        return self.scale * result

    def fourier(self, p):
        p = np.atleast_2d(np.asarray(p, dtype=float))
        i, k = self.plane
        q = np.sqrt(p[:, i] ** 2 + p[:, k] ** 2)
        phase = np.exp(1j * (p[:, 0] * self.offset[0]
                             - p[:, 1:] @ self.offset[1:]))
        return (self.scale * phase * self.time.fourier(p[:, 0])
                * self.axial.fourier(-p[:, self.axis])
                * self.radial.hankel(self.kind, q))

    def integral(self):
        return (self.scale * self.time.integral() * self.axial.integral()
                * self.radial.integral_2d(self.kind))

    def support(self):
        t_lo, t_hi = self.time.support_interval()
        z_lo, z_hi = self.axial.support_interval()
        r_lo, r_hi = self.radial.band
        if self.kind == 'b':
            r_hi = math.sqrt(self.radial_source.support_interval()[1])
        if self.kind == 'c':
            center = self.offset.copy()
            center[0] += 0.5 * (t_lo + t_hi)
            center[self.axis] += 0.5 * (z_lo + z_hi)
            ring = max(1.0 - r_lo, r_hi - 1.0)
            tube = math.hypot(ring, 0.5 * (z_hi - z_lo))
            return SupportRegion((SolidTorus(
                self.plane, tuple(center), 1.0, tube, 0.5 * (t_hi - t_lo)),))
        lower = np.empty(4)
        upper = np.empty(4)
        lower[0], upper[0] = t_lo, t_hi
        lower[self.axis], upper[self.axis] = z_lo, z_hi
        for a in self.plane:
            lower[a], upper[a] = -r_hi, r_hi
        return SupportRegion((Box(tuple(lower + self.offset),
                                  tuple(upper + self.offset)),))

    def _copy(self, **changes) -> 'AxialScalar':
        arguments = dict(time=self.time, axial=self.axial,
                         radial=self.radial_source, kind=self.kind,
                         plane=self.plane, axis=self.axis, offset=self.offset,
                         scale=self.scale)
        arguments.update(changes)
        return AxialScalar(**arguments)

    def translated(self, shift):
        return self._copy(offset=self.offset + np.asarray(shift, dtype=float))

    def rotated(self, rotation):
        new_axis, sign = axis_image(rotation, self.axis)
        plane = tuple(axis_image(rotation, a)[0] for a in self.plane)
        axial = self.axial if sign > 0 else self.axial.reflected()
        return self._copy(axial=axial, plane=plane, axis=new_axis,
                          offset=rotation @ self.offset)

    def scaled(self, factor):
        return self._copy(scale=self.scale * factor)

    def with_kind(self, kind: str) -> 'AxialScalar':
        """Same factors with another radial function."""
        return self._copy(kind=kind)

    @property
    def has_tails(self):
        return self.time.has_tails or self.axial.has_tails

    @property
    def is_differentiable(self):
        return not (self.time.is_dirac or self.axial.is_dirac)

    def payload(self):
        return {'type': 'axial', 'time': self.time.payload(),
                'axial': self.axial.payload(),
                'radial': self.radial_source.payload(), 'kind': self.kind,
                'plane': list(self.plane), 'axis': self.axis,
                'offset': [repr(float(v)) for v in self.offset],
                'scale': repr(self.scale)}
