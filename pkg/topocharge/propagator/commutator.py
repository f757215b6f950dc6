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
Free Maxwell two-point function, inner product and commutator function.

All quadratic products of covectors use (u, v) = -eta^{mu nu} u_mu v_nu,
which is non-negative on the light cone for transverse vectors. For a
2-form G, (pG)_mu = p^nu G_{mu nu}; for g = delta G the identity
(g(-p), g(p)) = (pG(-p), pG(p)) makes two_point_oneform(delta G1,
delta G2) and inner0(G1, G2) one and the same integral.
"""
import logging
from typing import Protocol, Sequence, Tuple

import numpy as np

from ..exterior.conventions import (MOMENTUM_MEASURE, contract_p,
                                    transverse_product)
from ..exterior.forms import TwoForm
from .quadrature import (COMMUTATOR, POSITIVE, IntegralResult,
                         QuadratureSpec, lightcone_integrate)

logger = logging.getLogger('topocharge')


class MomentumEvaluator(Protocol):
    """Anything with a momentum-space evaluator of covariant components."""
    def fourier(self, p: np.ndarray) -> np.ndarray:
        """Transform at contravariant momenta (N, 4)."""


FormTerm = Tuple[complex, TwoForm, TwoForm]


def _form_integrand(terms: Sequence[FormTerm]):
    """sum_j w_j (conj(pG1_j(p)), pG2_j(p)); each form evaluated once."""
    forms = {}
    for _, first, second in terms:
        forms[id(first)] = first
        forms[id(second)] = second

    def integrand(p):
        # conj(pG(p)) = pG(-p) for real forms
        contracted = {key: contract_p(p, form.fourier(p))
                      for key, form in forms.items()}
        total = np.zeros(p.shape[0], dtype=complex)
        for weight, first, second in terms:
            total += weight * transverse_product(
                np.conj(contracted[id(first)]), contracted[id(second)])
        return total
    return integrand


def _nonempty(terms: Sequence[FormTerm]):
    return [term for term in terms
            if term[0] != 0 and term[1].terms and term[2].terms]


def inner_combination(terms: Sequence[FormTerm],
                      spec: QuadratureSpec = QuadratureSpec(),
                      threads: int = 1) -> IntegralResult:
    """sum_j w_j <G1_j, G2_j>_0 as one light-cone integral."""
    terms = _nonempty(terms)
    if not terms:
        return IntegralResult(0j, 0.0, 0)
    result = lightcone_integrate(_form_integrand(terms), spec, POSITIVE,
                                 threads)
    return result * MOMENTUM_MEASURE


def commutator_combination(terms: Sequence[FormTerm],
                           spec: QuadratureSpec = QuadratureSpec(),
                           threads: int = 1) -> IntegralResult:
    """
    sum_j w_j Delta(G1_j, G2_j) for real weights as one light-cone
    integral. The integral is purely imaginary and equals -i times the
    real result.
    """
    terms = _nonempty(terms)
    if not terms:
        return IntegralResult(0.0, 0.0, 0)
    result = lightcone_integrate(_form_integrand(terms), spec, COMMUTATOR,
                                 threads) * MOMENTUM_MEASURE
    value = complex(result.value)
    if abs(value.real) > max(result.error_estimate,
                             1e-12 * result.magnitude):
        logger.warning("Commutator integral has a real part %.3e beyond "
                       "its error %.3e", value.real, result.error_estimate)
    return IntegralResult(-value.imag, result.error_estimate,
                          result.nodes_used, result.converged,
                          result.magnitude)


def inner0(first: TwoForm, second: TwoForm,
           spec: QuadratureSpec = QuadratureSpec(),
           threads: int = 1) -> IntegralResult:
    """
    <G1, G2>_0 = (2 pi)^-3 int dp theta(p_0) delta(p^2)
    (conj(pG1(p)), pG2(p)); hermitian and positive semidefinite.
    """
    return inner_combination([(1.0, first, second)], spec, threads)


def pauli_jordan(first: TwoForm, second: TwoForm,
                 spec: QuadratureSpec = QuadratureSpec(),
                 threads: int = 1) -> IntegralResult:
    """
    Commutator function Delta(G1, G2) of the free field, real and
    antisymmetric, vanishing for spacelike separated supports.

    The light-cone integral (2 pi)^-3 int dp eps(p_0) delta(p^2)
    (pG1(-p), pG2(p)) is purely imaginary and equals -i Delta, so that
    sigma = i <[A(delta G1), A(delta G2)]> = Delta.
    """
    return commutator_combination([(1.0, first, second)], spec, threads)


def roberts(first: TwoForm, second: TwoForm,
            spec: QuadratureSpec = QuadratureSpec(),
            threads: int = 1) -> IntegralResult:
    """Delta(G1, *G2): symmetric in its arguments."""
    return pauli_jordan(first, second.star(), spec, threads)


def two_point_oneform(first: MomentumEvaluator, second: MomentumEvaluator,
                      spec: QuadratureSpec = QuadratureSpec(),
                      threads: int = 1) -> IntegralResult:
    """
    <Omega_0, A_0(g1) A_0(g2) Omega_0> = -(2 pi)^-3 int dp theta(p_0)
    delta(p^2) eta^{mu nu} g1_mu(-p) g2_nu(p) for co-closed g1, g2.
    Its antisymmetric part is (-i / 2) Delta of the co-primitives.
    """
    def integrand(p):
        return transverse_product(np.conj(first.fourier(p)),
                                  second.fourier(p))
    result = lightcone_integrate(integrand, spec, POSITIVE, threads)
    return result * MOMENTUM_MEASURE
