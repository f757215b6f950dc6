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
Loop functions and the canonical loop family.

A loop function smears the (lowered) tangent of a closed curve with a
scalar test function,

    l_mu(x) = int_0^1 dt s(x - gamma(t)) gamma_dot_mu(t),

and is co-closed for every loop. Its class value is the integral of s.
The canonical family g^(ik), g^(0l) carries explicit co-primitives built
from the radial functions c and C, and circles additionally get the flat
disk co-primitive.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import j1

from ..exc import InvalidLoopError, UnsupportedSurfaceError
from ..exterior.conventions import PAIRS, lower_index, minkowski_dot
from ..exterior.forms import CoderivativePiece, OneForm, Piece, TwoForm
from ..exterior.profiles import Profile1D, gauss_legendre
from ..exterior.scalars import AxialScalar, ScalarFunction, axis_image
from ..exterior.support import Box, SupportRegion
from .curves import CircleLoop, ParametricLoop

logger = logging.getLogger('topocharge')

# periodic trapezoid nodes for position-space loop integrals
POSITION_NODES = 4096
# momentum-space node count is max(MIN_MOMENTUM_NODES, NODES_PER_PHASE *
# |p| * extent * windings), rounded up to a power of two
MIN_MOMENTUM_NODES = 64
NODES_PER_PHASE = 8
# flat disk quadrature: Gauss-Legendre in the radius, trapezoid in angle
DISK_RADIAL_ORDER = 128
DISK_ANGULAR_NODES = 1024
# rows of smear evaluations held in memory at once
BLOCK_ROWS = 1 << 20


def momentum_nodes(p: np.ndarray, loop: ParametricLoop) -> np.ndarray:
    """Trapezoid node count per momentum for the loop phase integral."""
    scale = np.linalg.norm(np.atleast_2d(p), axis=-1) * loop.extent() \
        * loop.windings
    needed = np.maximum(MIN_MOMENTUM_NODES, np.ceil(NODES_PER_PHASE * scale))
    return (2 ** np.ceil(np.log2(needed))).astype(int)


def _smeared(smear_fn, x: np.ndarray, points: np.ndarray,
             weights: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """sum_j w_j smear_fn(x - points_j) (x) vectors_j for every x, blocked.

    smear_fn returns (M, ...) for M shifted points; the result has shape
    (len(x),) + trailing shape of smear_fn contracted with vectors."""
    count = points.shape[0]
    block = max(1, BLOCK_ROWS // count)
    parts = []
    for start in range(0, x.shape[0], block):
        chunk = x[start:start + block]
        shifted = (chunk[:, None, :] - points[None, :, :]).reshape(-1, 4)
        values = smear_fn(shifted)
        values = values.reshape((chunk.shape[0], count) + values.shape[1:])
        parts.append(np.einsum('bn...,n,nk->bk...', values, weights,
                               vectors))
    return np.concatenate(parts, axis=0)


class LoopPiece(Piece):
    """l_{s, gamma} as a OneForm piece."""

    def __init__(self, smear: ScalarFunction, loop: ParametricLoop,
                 label: str = '', coprimitive: Optional[TwoForm] = None,
                 nodes: int = POSITION_NODES):
        loop.check_closed()
        self.smear = smear
        self.loop = loop
        self.nodes = nodes
        support = _tube_support(smear, loop)
        super().__init__(label or 'l[{}]'.format(loop), support,
                         coprimitive=coprimitive,
                         kappa=float(smear.integral()))

    def _trapezoid(self):
        t = np.arange(self.nodes) / self.nodes
        weights = np.full(self.nodes, 1.0 / self.nodes)
        return self.loop.position(t), self.loop.velocity(t), weights

    def value(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        points, velocity, weights = self._trapezoid()
        return _smeared(self.smear.value, x, points, weights,
                        lower_index(velocity))

    def divergence(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        points, velocity, weights = self._trapezoid()
        # d^mu s(x - gamma) gamma_dot_mu = d_mu s gamma_dot^mu
        gradient = _smeared(self.smear.gradient, x, points, weights,
                            velocity)
        return np.einsum('bkk->b', gradient)

    def phase_integral(self, p: np.ndarray) -> np.ndarray:
        """int_0^1 dt exp(i p.gamma(t)) gamma_dot_mu(t), shape (N, 4)."""
        p = np.atleast_2d(np.asarray(p, dtype=float))
        result = np.zeros((p.shape[0], 4), dtype=complex)
        counts = momentum_nodes(p, self.loop)
        for count in np.unique(counts):
            rows = counts == count
            t = np.arange(count) / count
            points = self.loop.position(t)
            velocity = lower_index(self.loop.velocity(t))
            phase = np.exp(1j * minkowski_dot(p[rows][:, None, :],
                                              points[None, :, :]))
            result[rows] = phase @ velocity / count
        return result

    def fourier(self, p):
        p = np.atleast_2d(np.asarray(p, dtype=float))
        return self.smear.fourier(p)[:, None] * self.phase_integral(p)

    def translated(self, shift):
        coprimitive = self.coprimitive.translated(shift) \
            if self.coprimitive is not None else None
        return LoopPiece(self.smear, self.loop.translated(shift), self.label,
                         coprimitive=coprimitive, nodes=self.nodes)


def _tube_support(smear: ScalarFunction, loop: ParametricLoop) \
        -> SupportRegion:
    """Box enclosing supp s + gamma."""
    box = smear.support().bounding_box()
    points = loop.samples()
    lower = np.asarray(box.lower) + points.min(axis=0)
    upper = np.asarray(box.upper) + points.max(axis=0)
    return SupportRegion((Box(tuple(lower), tuple(upper)),))


class DiskScalar(ScalarFunction):
    """
    int_0^1 du int_0^1 dt u s(x - S(t, u)) times -2 pi n R^2, with S the
    flat disk spanning a circle of radius R traversed n times. This is the
    (i, k) component of the disk co-primitive of the loop function.
    """

    def __init__(self, smear: ScalarFunction, circle: CircleLoop,
                 scale: float = 1.0):
        self.smear = smear
        self.circle = circle
        self.scale = float(scale)

    @property
    def prefactor(self) -> float:
        """-2 pi n R^2 times the scale."""
        return (-2.0 * math.pi * self.circle.traversal
                * self.circle.radius ** 2 * self.scale)

    def _disk_nodes(self):
        u, u_weights = gauss_legendre(DISK_RADIAL_ORDER, 0.0, 1.0)
        angle = 2.0 * math.pi * np.arange(DISK_ANGULAR_NODES) \
            / DISK_ANGULAR_NODES
        points = np.tile(self.circle.center,
                         (DISK_RADIAL_ORDER * DISK_ANGULAR_NODES, 1))
        radius = np.repeat(u * self.circle.radius, DISK_ANGULAR_NODES)
        i, k = self.circle.plane
        points[:, i] += radius * np.tile(np.cos(angle), DISK_RADIAL_ORDER)
        points[:, k] += radius * np.tile(np.sin(angle), DISK_RADIAL_ORDER)
        weights = np.repeat(u * u_weights, DISK_ANGULAR_NODES) \
            / DISK_ANGULAR_NODES
        return points, weights

    def _integrate(self, smear_fn, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        points, weights = self._disk_nodes()
        ones = np.ones((points.shape[0], 1))
        return self.prefactor * _smeared(smear_fn, x, points, weights,
                                         ones)[:, 0]

    def value(self, x):
        return self._integrate(self.smear.value, x)

    def gradient(self, x):
        return self._integrate(self.smear.gradient, x)

    def hessian(self, x):
        return self._integrate(self.smear.hessian, x)

    def fourier(self, p):
        p = np.atleast_2d(np.asarray(p, dtype=float))
        i, k = self.circle.plane
        rq = self.circle.radius * np.hypot(p[:, i], p[:, k])
        ratio = np.full(rq.shape, 0.5)
        nonzero = rq > 1e-8
        ratio[nonzero] = j1(rq[nonzero]) / rq[nonzero]
        ratio[~nonzero] -= rq[~nonzero] ** 2 / 16.0
        phase = np.exp(1j * minkowski_dot(p, self.circle.center))
        return self.prefactor * self.smear.fourier(p) * phase * ratio

    def integral(self):
        return float(self.fourier(np.zeros((1, 4)))[0].real)

    def support(self):
        box = self.smear.support().bounding_box()
        lower = np.asarray(box.lower) + self.circle.center
        upper = np.asarray(box.upper) + self.circle.center
        for axis in self.circle.plane:
            lower[axis] -= self.circle.radius
            upper[axis] += self.circle.radius
        return SupportRegion((Box(tuple(lower), tuple(upper)),))

    def translated(self, shift):
        return DiskScalar(self.smear, self.circle.translated(shift),
                          self.scale)

    def rotated(self, rotation):
        # orientation is carried by the form coefficients, so only the
        # unoriented disk moves here
        plane = tuple(axis_image(rotation, a)[0] for a in self.circle.plane)
        circle = CircleLoop(plane, self.circle.radius,
                            rotation @ self.circle.center,
                            self.circle.traversal)
        return DiskScalar(self.smear.rotated(rotation), circle, self.scale)

    def scaled(self, factor):
        return DiskScalar(self.smear, self.circle, self.scale * factor)

    @property
    def has_tails(self):
        return self.smear.has_tails

    @property
    def is_differentiable(self):
        return self.smear.is_differentiable

    def payload(self):
        return {'type': 'disk', 'smear': self.smear.payload(),
                'circle': repr(self.circle), 'scale': repr(self.scale)}


def disk_coprimitive(smear: ScalarFunction, loop: ParametricLoop) -> TwoForm:
    """
    Co-primitive of l_{s, gamma} obtained by smearing the flat disk that
    spans a planar circle: delta f = l_{s, gamma}.
    :raises UnsupportedSurfaceError: for loops that are not circles
    """
    if not isinstance(loop, CircleLoop):
        raise UnsupportedSurfaceError(
            "Only planar circles have a flat spanning disk, got {}"
            .format(type(loop).__name__))
    i, k = loop.plane
    return TwoForm.single(i, k, DiskScalar(smear, loop),
                          label='disk[{}]'.format(loop))


def _ramp_moment(a: np.ndarray) -> np.ndarray:
    """int_0^1 du u exp(i a u) for real a."""
    a = np.asarray(a, dtype=float)
    result = np.empty(a.shape, dtype=complex)
    small = np.abs(a) < 1e-3
    tiny = a[small]
    result[small] = 0.5 + 1j * tiny / 3.0 - tiny ** 2 / 8.0
    large = a[~small]
    phase = np.exp(1j * large)
    result[~small] = phase / (1j * large) + (phase - 1.0) / large ** 2
    return result


class ConeScalar(ScalarFunction):
    """
    Component (mu, nu) of the co-primitive obtained by smearing the cone
    S(t, u) = c + u (gamma(t) - c) swept from an apex c to the loop,

        -int_0^1 dt int_0^1 du u s(x - S(t, u)) B_{mu nu}(t),

    with B = (gamma - c) ^ gamma_dot lowered. The t integral runs over the
    loop parametrization itself, so a loop traversed n times is swept n
    times. For a circle with c at its center this is the flat disk.
    """

    def __init__(self, smear: ScalarFunction, loop: ParametricLoop,
                 apex: np.ndarray, component: Tuple[int, int],
                 scale: float = 1.0, rotation: Optional[np.ndarray] = None):
        self.smear = smear
        self.loop = loop
        self.apex = np.asarray(apex, dtype=float)
        self.component = (int(component[0]), int(component[1]))
        self.scale = float(scale)
        self.rotation = np.eye(4) if rotation is None \
            else np.asarray(rotation, dtype=float)

    def _sweep(self, t: np.ndarray):
        """Loop points relative to the apex and B_{mu nu} at parameters."""
        relative = self.loop.position(t) - self.apex
        lowered = lower_index(relative)
        velocity = lower_index(self.loop.velocity(t))
        mu, nu = self.component
        bivector = lowered[:, mu] * velocity[:, nu] \
            - lowered[:, nu] * velocity[:, mu]
        return relative, bivector

    def _cone_nodes(self):
        count = DISK_ANGULAR_NODES * abs(self.loop.windings)
        relative, bivector = self._sweep(np.arange(count) / count)
        u, u_weights = gauss_legendre(DISK_RADIAL_ORDER, 0.0, 1.0)
        points = self.apex + (u[:, None, None] * relative[None, :, :]) \
            .reshape(-1, 4)
        weights = (u * u_weights)[:, None] * bivector[None, :] / count
        return points, weights.reshape(-1)

    def _integrate(self, smear_fn, x):
        x = np.atleast_2d(np.asarray(x, dtype=float)) @ self.rotation
        points, weights = self._cone_nodes()
        ones = np.ones((points.shape[0], 1))
        return -self.scale * _smeared(smear_fn, x, points, weights,
                                      ones)[:, 0]

    def value(self, x):
        return self._integrate(self.smear.value, x)

    def gradient(self, x):
        return self._integrate(self.smear.gradient, x) @ self.rotation.T

    def hessian(self, x):
        hess = self._integrate(self.smear.hessian, x)
        return self.rotation @ hess @ self.rotation.T

    def fourier(self, p):
        p = np.atleast_2d(np.asarray(p, dtype=float)) @ self.rotation
        result = np.zeros(p.shape[0], dtype=complex)
        counts = momentum_nodes(p, self.loop)
        for count in np.unique(counts):
            rows = counts == count
            relative, bivector = self._sweep(np.arange(count) / count)
            moments = _ramp_moment(minkowski_dot(p[rows][:, None, :],
                                                 relative[None, :, :]))
            result[rows] = moments @ bivector / count
        phase = np.exp(1j * minkowski_dot(p, self.apex))
        return -self.scale * self.smear.fourier(p) * phase * result

    def integral(self):
        return float(self.fourier(np.zeros((1, 4)))[0].real)

    def support(self):
        return _tube_support(self.smear, self.loop).rotated(self.rotation)

    def translated(self, shift):
        shift = self.rotation.T @ np.asarray(shift, dtype=float)
        return ConeScalar(self.smear, self.loop.translated(shift),
                          self.apex + shift, self.component, self.scale,
                          self.rotation)

    def rotated(self, rotation):
        # the component stays in the frame of the loop; only the point of
        # evaluation turns
        return ConeScalar(self.smear, self.loop, self.apex, self.component,
                          self.scale, rotation @ self.rotation)

    def scaled(self, factor):
        return ConeScalar(self.smear, self.loop, self.apex, self.component,
                          self.scale * factor, self.rotation)

    @property
    def has_tails(self):
        return self.smear.has_tails

    @property
    def is_differentiable(self):
        return self.smear.is_differentiable

    def payload(self):
        return {'type': 'cone', 'smear': self.smear.payload(),
                'loop': repr(self.loop), 'apex': self.apex.tolist(),
                'component': list(self.component), 'scale': repr(self.scale),
                'rotation': self.rotation.tolist()}


def cone_coprimitive(smear: ScalarFunction, loop: ParametricLoop,
                     apex=None) -> TwoForm:
    """
    Co-primitive of l_{s, gamma} obtained by smearing the cone from apex
    (default: the centroid of the loop) to gamma; works for every closed
    loop. Components whose bivector vanishes along the loop are dropped.
    :raises InvalidLoopError: if the loop is not closed
    """
    loop.check_closed()
    if apex is None:
        apex = loop.samples().mean(axis=0)
    apex = np.asarray(apex, dtype=float)
    t = np.arange(DISK_ANGULAR_NODES) / DISK_ANGULAR_NODES
    relative = lower_index(loop.position(t) - apex)
    velocity = lower_index(loop.velocity(t))
    sizes = {}
    for mu, nu in PAIRS:
        bivector = relative[:, mu] * velocity[:, nu] \
            - relative[:, nu] * velocity[:, mu]
        sizes[(mu, nu)] = float(np.max(np.abs(bivector)))
    largest = max(sizes.values())
    terms = []
    for (mu, nu), size in sizes.items():
        if size > 1e-12 * largest:
            terms.extend(TwoForm.single(
                mu, nu, ConeScalar(smear, loop, apex, (mu, nu))).terms)
    if not terms:
        raise InvalidLoopError("Loop {} sweeps no area".format(loop))
    return TwoForm(terms, label='cone[{}]'.format(loop))


def loop_function(smear: ScalarFunction, loop: ParametricLoop,
                  label: str = '') -> LoopPiece:
    """
    l_{s, gamma}; circles get their disk co-primitive attached.
    :raises InvalidLoopError: if the loop is not closed
    """
    coprimitive = disk_coprimitive(smear, loop) \
        if isinstance(loop, CircleLoop) else None
    return LoopPiece(smear, loop, label=label, coprimitive=coprimitive)


class CanonicalPiece(CoderivativePiece):
    """
    Member of the canonical loop family: a co-derivative piece whose
    position values come from the closed form in terms of the radial
    function c rather than from differentiating the co-primitive.
    """

    def __init__(self, coprimitive: TwoForm, c_scalar: AxialScalar,
                 electric: bool, label: str, kappa: float):
        super().__init__(coprimitive, label=label, kappa=kappa,
                         support=c_scalar.support())
        self.c_scalar = c_scalar
        self.electric = electric

    def value(self, x):
        self._require_differentiable()
        x = np.atleast_2d(np.asarray(x, dtype=float))
        result = np.zeros((x.shape[0], 4))
        if self.electric:
            gradient = self.c_scalar.gradient(x)
            axis = self.c_scalar.axis
            result[:, 0] = gradient[:, axis]
            result[:, axis] = gradient[:, 0]
            return result
        i, k = self.c_scalar.plane
        local = x - self.c_scalar.offset
        values = self.c_scalar.value(x)
        result[:, i] = -local[:, k] * values
        result[:, k] = local[:, i] * values
        return result

    def translated(self, shift):
        return CanonicalPiece(self.coprimitive.translated(shift),
                              self.c_scalar.translated(shift), self.electric,
                              self.label, self.kappa)


def canonical_smear(alpha: Profile1D, beta: Profile1D, b: Profile1D,
                    plane: Tuple[int, int] = (1, 2), axis: int = 3,
                    translation=(0.0, 0.0, 0.0, 0.0)) -> AxialScalar:
    """s^(ikl)(x) = alpha(x_0) beta(x_l) b(x_i^2 + x_k^2), translated."""
    return AxialScalar(alpha, beta, b, 'b', plane, axis, offset=translation)


def canonical_loop(plane: Tuple[int, int] = (1, 2),
                   translation=(0.0, 0.0, 0.0, 0.0)) -> CircleLoop:
    """Unit circle in the plane (i, k) about the translation."""
    return CircleLoop(plane, 1.0, center=translation)


def canonical_g(plane: Tuple[int, int], axis: int, alpha: Profile1D,
                beta: Profile1D, b: Profile1D,
                translation=(0.0, 0.0, 0.0, 0.0)) -> CanonicalPiece:
    """
    g^(ik)_mu = (-delta_{mu i} x_k + delta_{mu k} x_i) a(x_0, x_l) c(r^2)
    with co-primitive G^(ik)_{ki} = -G^(ik)_{ik} = a C / 2.

    g^(ik) = -(2 pi)^-1 l_{s, gamma} for the unit circle gamma in the plane
    about the translation and s = canonical_smear(...) at the origin, so
    the class value is -kappa(s) / (2 pi).
    :raises ConventionError: if b is too wide for the support band
    """
    i, k = plane
    c_scalar = AxialScalar(alpha, beta, b, 'c', plane, axis,
                           offset=translation)
    label = 'g({}{})'.format(i, k)
    coprimitive = TwoForm.single(i, k, c_scalar.with_kind('C'), weight=-0.5,
                                 label='G({}{})'.format(i, k))
    smear = canonical_smear(alpha, beta, b, plane, axis, translation)
    kappa = -smear.integral() / (2.0 * math.pi)
    return CanonicalPiece(coprimitive, c_scalar, electric=False,
                          label=label, kappa=kappa)


def canonical_g0(axis: int, plane: Tuple[int, int], alpha: Profile1D,
                 beta: Profile1D, b: Profile1D,
                 translation=(0.0, 0.0, 0.0, 0.0)) -> CanonicalPiece:
    """
    g^(0l) = delta G^(0l) with G^(0l)_{0l} = a(x_0, x_l) c(r^2): in
    covariant components g_0 = d_l(a c), g_l = d_0(a c). Co-exact, so its
    class value is zero; the support is the torus of the partner g^(ik).
    """
    c_scalar = AxialScalar(alpha, beta, b, 'c', plane, axis,
                           offset=translation)
    coprimitive = TwoForm.single(0, axis, c_scalar,
                                 label='G(0{})'.format(axis))
    return CanonicalPiece(coprimitive, c_scalar, electric=True,
                          label='g(0{})'.format(axis), kappa=0.0)


def class_value(piece: Piece) -> float:
    """
    kappa of a piece: the smear integral for loop functions, the recorded
    value for canonical pieces.
    """
    if isinstance(piece, LoopPiece):
        return float(piece.smear.fourier(np.zeros((1, 4)))[0].real)
    if piece.kappa is None:
        raise ValueError("Piece {} has no class value".format(piece.label))
    return float(piece.kappa)


def coexact_pair(first: ScalarFunction, second: ScalarFunction,
                 loop: ParametricLoop) -> OneForm:
    """
    l_{s1, gamma} + l_{s2', gamma} with s2' = -(kappa(s1) / kappa(s2)) s2,
    a co-exact one-form (zero class value) on the loop.
    """
    ratio = first.integral() / second.integral()
    return OneForm([loop_function(first, loop, label='l1'),
                    loop_function(second.scaled(-ratio), loop, label='l2')])
