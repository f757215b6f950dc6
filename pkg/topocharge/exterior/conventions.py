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
Fixed conventions on Minkowski space.

Everything else in topocharge assumes these and nothing else:

* metric signature (+, -, -, -);
* orientation epsilon_{0123} = +1 (lower indices);
* Fourier kernel exp(+i p.x) with p.x = p^0 x^0 - p.x (spatial dot);
* co-derivative of a 2-form (delta G)_mu = d^nu G_{nu mu}, so that in
  momentum space g_mu(p) = -i p^nu G_{nu mu}(p);
* Hodge star (*G)_{mu nu} = 1/2 eps_{mu nu alpha beta} G^{alpha beta};
* 2-forms are stored covariantly as the six components mu < nu, in the
  order given by PAIRS; momenta are contravariant 4-vectors.
"""
import itertools
from typing import List, Tuple

import numpy as np

SIGNATURE = np.array([1.0, -1.0, -1.0, -1.0])
METRIC = np.diag(SIGNATURE)
FOURIER_SIGN = 1

# stored index -> (mu, nu) and back
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
COMPONENTS = {pair: idx for idx, pair in enumerate(PAIRS)}
SPATIAL = (1, 2, 3)

# (2 pi)^-3 in front of every light-cone integral
MOMENTUM_MEASURE = (2.0 * np.pi) ** -3

# roberts(G^(12), G^(13)_e) / reduced_roberts_oracle(b, e) for unit
# dirac_limit time and axial factors
ROBERTS_ORACLE_CONSTANT = 0.5


def _permutation_sign(perm: Tuple[int, ...]) -> int:
    sign = 1
    perm = list(perm)
    for i, _ in enumerate(perm):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def _levi_civita() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        eps[perm] = _permutation_sign(perm)
    return eps


LEVI_CIVITA = _levi_civita()


def component_index(mu: int, nu: int) -> Tuple[int, int]:
    """Storage index and sign of G_{mu nu}.

    :param mu: first covariant index
    :param nu: second covariant index
    :return: (index into the six stored components, +1 or -1)
    """
    if mu == nu:
        raise ValueError("Diagonal component of a 2-form")
    if mu < nu:
        return COMPONENTS[(mu, nu)], 1
    return COMPONENTS[(nu, mu)], -1


def to_matrix(values: np.ndarray) -> np.ndarray:
    """Expand stored components (..., 6) into antisymmetric (..., 4, 4)."""
    values = np.asarray(values)
    matrix = np.zeros(values.shape[:-1] + (4, 4), dtype=values.dtype)
    for idx, (mu, nu) in enumerate(PAIRS):
        matrix[..., mu, nu] = values[..., idx]
        matrix[..., nu, mu] = -values[..., idx]
    return matrix


def from_matrix(matrix: np.ndarray) -> np.ndarray:
    """Stored components of the antisymmetric part of (..., 4, 4)."""
    matrix = np.asarray(matrix)
    values = np.zeros(matrix.shape[:-2] + (6,), dtype=matrix.dtype)
    for idx, (mu, nu) in enumerate(PAIRS):
        values[..., idx] = 0.5 * (matrix[..., mu, nu] - matrix[..., nu, mu])
    return values


def _hodge_matrix() -> np.ndarray:
    hodge = np.zeros((6, 6), dtype=np.int64)
    for (alpha, beta), col in COMPONENTS.items():
        upper = np.zeros((4, 4))
        sign = SIGNATURE[alpha] * SIGNATURE[beta]
        upper[alpha, beta] = sign
        upper[beta, alpha] = -sign
        star = 0.5 * np.einsum('mnab,ab->mn', LEVI_CIVITA, upper)
        for (mu, nu), row in COMPONENTS.items():
            hodge[row, col] = int(np.rint(star[mu, nu]))
    return hodge


# stored(*G) = HODGE @ stored(G); integer entries, so the star is exact
HODGE = _hodge_matrix()


def minkowski_dot(p: np.ndarray, x: np.ndarray) -> np.ndarray:
    """p.x over the last axis, both arguments contravariant."""
    p = np.asarray(p)
    x = np.asarray(x)
    return p[..., 0] * x[..., 0] - np.sum(p[..., 1:] * x[..., 1:], axis=-1)


def lower_index(vector: np.ndarray) -> np.ndarray:
    """Covariant components of a contravariant vector (or the reverse)."""
    return np.asarray(vector) * SIGNATURE


def electric_magnetic(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Split stored components into E_i = G_{0i} and B with
    B_1 = G_{23}, B_2 = G_{31}, B_3 = G_{12}."""
    values = np.asarray(values)
    electric = values[..., 0:3]
    magnetic = np.stack(
        [values[..., 5], -values[..., 4], values[..., 3]], axis=-1)
    return electric, magnetic


def contract_p(p: np.ndarray, values: np.ndarray) -> np.ndarray:
    """(p G)_mu = p^nu G_{mu nu} for contravariant p (N, 4) and stored
    components (N, 6); returns covariant (N, 4)."""
    return np.einsum('...n,...mn->...m', p, to_matrix(values))


def transverse_product(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """(u, v) = -eta^{mu nu} u_mu v_nu over the last axis.

    Non-negative for u = conj(v) when v is orthogonal to a null p."""
    return -np.sum(SIGNATURE * u * v, axis=-1)


def self_test() -> List[str]:
    """Pin every convention to explicit values. Returns the list of
    violated conventions (empty when all hold)."""
    failures = []
    if not np.array_equal(SIGNATURE, [1.0, -1.0, -1.0, -1.0]):
        failures.append("metric signature is not (+,-,-,-)")
    if LEVI_CIVITA[0, 1, 2, 3] != 1:
        failures.append("orientation eps_0123 is not +1")
    if FOURIER_SIGN != 1:
        failures.append("Fourier kernel is not exp(+i p.x)")
    if not np.array_equal(HODGE @ HODGE, -np.eye(6, dtype=np.int64)):
        failures.append("star star is not -1 on 2-forms")
    idx12, _ = component_index(1, 2)
    idx03, _ = component_index(0, 3)
    if HODGE[idx03, idx12] != 1 or HODGE[idx12, idx03] != -1:
        failures.append("(*G)_03 = G_12 and (*G)_12 = -G_03 violated")
    # d^nu G_{nu mu} -> -i p^nu G_{nu mu}: check with a plane wave
    p = np.array([0.3, 0.7, -0.2, 0.5])
    x = np.array([0.1, -0.4, 0.9, 0.2])
    phase = np.exp(1j * FOURIER_SIGN * minkowski_dot(p, x))
    step = 1e-6
    shifted = x + step * np.array([0.0, 1.0, 0.0, 0.0])
    numeric = (np.exp(1j * FOURIER_SIGN * minkowski_dot(p, shifted))
               - phase) / step
    # d_1 exp(i p.x) = -i p^1 exp(i p.x)
    if abs(numeric - (-1j * p[1] * phase)) > 1e-4:
        failures.append("Fourier kernel sign does not match p.x")
    return failures
