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
Two-field multiplet.

A doublet is a pair (g_u, g_d) of co-closed forms, handled through their
co-primitives. For -1 <= zeta <= 1 the form

    <g1, g2>_zeta = <G1u, G2u>_0 + <G1d, G2d>_0
                    + zeta <G1u, *G2d>_0 - zeta <G1d, *G2u>_0

is a positive semidefinite scalar product, invariant under the SO(2)
rotating the two components, and its commutator couples u and d through
the Roberts term.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..charge.states import MULTIPLET, GeneratingFunctional
from ..exc import PositivityViolationError
from ..exterior.forms import Piece, TwoForm
from ..exterior.support import SupportRegion
from ..propagator.commutator import (FormTerm, commutator_combination,
                                     inner_combination)
from ..propagator.quadrature import IntegralResult, QuadratureSpec

logger = logging.getLogger('topocharge')


def _empty() -> TwoForm:
    return TwoForm([])


@dataclass
class DoubletForm:
    """
    Element of C_1 + C_1 given by co-primitives of its two components;
    an empty TwoForm stands for a zero component.
    """
    u: TwoForm = field(default_factory=_empty)
    d: TwoForm = field(default_factory=_empty)
    label: str = ''

    @classmethod
    def from_pieces(cls, u: Optional[Piece] = None,
                    d: Optional[Piece] = None,
                    label: str = '') -> 'DoubletForm':
        """Doublet of the co-primitives attached to two pieces."""
        forms = []
        for piece in (u, d):
            if piece is None:
                forms.append(_empty())
            elif piece.coprimitive is None:
                raise ValueError("Piece {} has no co-primitive"
                                 .format(piece.label))
            else:
                forms.append(piece.coprimitive)
        return cls(forms[0], forms[1], label)

    @property
    def support(self) -> SupportRegion:
        """Union of the component supports."""
        return self.u.support + self.d.support

    def fourier(self, p: np.ndarray) -> np.ndarray:
        """Stacked component transforms, shape (N, 2, 6)."""
        return np.stack([self.u.fourier(p), self.d.fourier(p)], axis=1)

    def scaled(self, factor: float) -> 'DoubletForm':
        """Both components times factor."""
        return DoubletForm(self.u * factor, self.d * factor, self.label)

    def translated(self, shift) -> 'DoubletForm':
        """Both components moved by a 4-vector."""
        return DoubletForm(self.u.translated(shift), self.d.translated(shift),
                           self.label)


def _check_zeta(zeta: float):
    if abs(zeta) > 1.0:
        logger.warning("zeta = %g outside [-1, 1]: the multiplet form is "
                       "not positive there", zeta)


def _zeta_terms(first: DoubletForm, second: DoubletForm,
                zeta: float) -> List[FormTerm]:
    return [(1.0, first.u, second.u), (1.0, first.d, second.d),
            (zeta, first.u, second.d.star()),
            (-zeta, first.d, second.u.star())]


def zeta_inner(first: DoubletForm, second: DoubletForm, zeta: float,
               spec: QuadratureSpec = QuadratureSpec(),
               threads: int = 1) -> IntegralResult:
    """<g1, g2>_zeta, hermitian; flagged in the log for |zeta| > 1."""
    _check_zeta(zeta)
    return inner_combination(_zeta_terms(first, second, zeta), spec,
                             threads)


def zeta_commutator(first: DoubletForm, second: DoubletForm, zeta: float,
                    spec: QuadratureSpec = QuadratureSpec(),
                    threads: int = 1) -> IntegralResult:
    """
    Delta(G1u, G2u) + Delta(G1d, G2d) + zeta Delta(G1u, *G2d)
    - zeta Delta(G1d, *G2u); equal to -2 Im <g1, g2>_zeta.
    """
    _check_zeta(zeta)
    return commutator_combination(_zeta_terms(first, second, zeta), spec,
                                  threads)


def so2_rotate(doublet: DoubletForm, theta: float) -> DoubletForm:
    """(cos u + sin d, -sin u + cos d)."""
    cos, sin = math.cos(theta), math.sin(theta)
    return DoubletForm(doublet.u * cos + doublet.d * sin,
                       doublet.u * -sin + doublet.d * cos, doublet.label)


def omega_zeta(a: float, doublet: DoubletForm, zeta: float,
               spec: QuadratureSpec = QuadratureSpec(),
               threads: int = 1) -> float:
    """
    exp(-a^2 <g, g>_zeta / 2).
    :raises PositivityViolationError: if <g, g>_zeta < -error
    """
    if a == 0:
        return 1.0
    return multiplet_state(zeta, spec, threads).evaluate(a, doublet)


def _checked_norm(doublet: DoubletForm, zeta: float, spec: QuadratureSpec,
                  threads: int) -> IntegralResult:
    result = zeta_inner(doublet, doublet, zeta, spec, threads)
    norm = float(np.real(result.value))
    if norm < -result.error_estimate:
        raise PositivityViolationError(
            "<g, g>_zeta = {:.3e} below -{:.1e} at zeta = {}".format(
                norm, result.error_estimate, zeta))
    return IntegralResult(max(norm, 0.0), result.error_estimate,
                          result.nodes_used, result.converged,
                          result.magnitude)


def multiplet_state(zeta: float, spec: QuadratureSpec = QuadratureSpec(),
                    threads: int = 1) -> GeneratingFunctional:
    """omega_zeta as a generating functional on doublets."""
    return GeneratingFunctional(
        MULTIPLET,
        lambda g: _checked_norm(g, zeta, spec, threads),
        lambda g1, g2: zeta_commutator(g1, g2, zeta, spec, threads),
        {'zeta': zeta})


def min_norm(doublets: Sequence[DoubletForm], zeta: float,
             spec: QuadratureSpec = QuadratureSpec(),
             threads: int = 1) -> IntegralResult:
    """Smallest <g, g>_zeta over a sample of doublets."""
    results = [zeta_inner(g, g, zeta, spec, threads).real for g in doublets]
    return min(results, key=lambda result: result.value)
