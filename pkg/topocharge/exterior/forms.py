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
Test forms: compactly supported 2-forms and co-closed 1-forms.

A TwoForm is a finite sum of terms, each a constant vector of the six
stored components times a scalar test function. The Hodge star, scaling,
translations and rotations act on the terms without any quadrature.
"""
import abc
import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..exc import GeometryError, NotDifferentiableError
from .conventions import (HODGE, SIGNATURE, electric_magnetic, from_matrix,
                          to_matrix)
from .scalars import ScalarFunction
from .support import SupportRegion, disjoint

logger = logging.getLogger('topocharge')


@dataclass(frozen=True, eq=False)
class Term:
    """coefficients (6 stored components) times a scalar function."""
    coefficients: np.ndarray
    scalar: ScalarFunction


class TwoForm:
    """Antisymmetric test 2-form G_{mu nu}, stored as mu < nu."""

    def __init__(self, terms: Sequence[Term], label: str = '',
                 support: Optional[SupportRegion] = None):
        self.terms: Tuple[Term, ...] = tuple(terms)
        self.label = label
        if support is None:
            support = SupportRegion()
            for term in self.terms:
                support = support + term.scalar.support()
        self.support = support

    @classmethod
    def single(cls, mu: int, nu: int, scalar: ScalarFunction,
               weight: float = 1.0, label: str = '') -> 'TwoForm':
        """Form with G_{mu nu} = -G_{nu mu} = weight * scalar."""
        matrix = np.zeros((4, 4))
        matrix[mu, nu] = weight
        matrix[nu, mu] = -weight
        return cls([Term(from_matrix(matrix), scalar)], label=label)

    @property
    def is_differentiable(self) -> bool:
        """False if any factor is a dirac_limit profile."""
        return all(t.scalar.is_differentiable for t in self.terms)

    @property
    def has_tails(self) -> bool:
        """True when some factor has gaussian tails."""
        return any(t.scalar.has_tails for t in self.terms)

    def value(self, x: np.ndarray) -> np.ndarray:
        """Stored components at points, shape (N, 6)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        result = np.zeros((x.shape[0], 6))
        for term in self.terms:
            result += term.scalar.value(x)[:, None] * term.coefficients
        return result

    def gradient(self, x: np.ndarray) -> np.ndarray:
        """d_rho G_{mu nu}, shape (N, 6, 4)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        result = np.zeros((x.shape[0], 6, 4))
        for term in self.terms:
            grad = term.scalar.gradient(x)
            result += term.coefficients[None, :, None] * grad[:, None, :]
        return result

    def hessian(self, x: np.ndarray) -> np.ndarray:
        """d_rho d_sigma G_{mu nu}, shape (N, 6, 4, 4)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        result = np.zeros((x.shape[0], 6, 4, 4))
        for term in self.terms:
            hess = term.scalar.hessian(x)
            result += (term.coefficients[None, :, None, None]
                       * hess[:, None, :, :])
        return result

    def fourier(self, p: np.ndarray) -> np.ndarray:
        """Stored components of the transform at momenta, shape (N, 6)."""
        p = np.atleast_2d(np.asarray(p, dtype=float))
        result = np.zeros((p.shape[0], 6), dtype=complex)
        for term in self.terms:
            result += term.scalar.fourier(p)[:, None] * term.coefficients
        return result

    def star(self) -> 'TwoForm':
        """Hodge dual; support unchanged."""
        return TwoForm([Term(HODGE @ t.coefficients, t.scalar)
                        for t in self.terms],
                       label='*' + self.label if self.label else '',
                       support=self.support)

    def __add__(self, other: 'TwoForm') -> 'TwoForm':
        label = ' + '.join(filter(None, [self.label, other.label]))
        return TwoForm(self.terms + other.terms, label=label,
                       support=self.support + other.support)

    def __mul__(self, factor: float) -> 'TwoForm':
        return TwoForm([Term(factor * t.coefficients, t.scalar)
                        for t in self.terms],
                       label=self.label, support=self.support)

    __rmul__ = __mul__

    def __neg__(self) -> 'TwoForm':
        return self * -1.0

    def __sub__(self, other: 'TwoForm') -> 'TwoForm':
        return self + (-other)

    def translated(self, shift) -> 'TwoForm':
        """G(x - shift)."""
        shift = np.asarray(shift, dtype=float)
        return TwoForm([Term(t.coefficients, t.scalar.translated(shift))
                        for t in self.terms], label=self.label,
                       support=self.support.translated(shift))

    def rotated(self, rotation: np.ndarray) -> 'TwoForm':
        """R G R^T evaluated at R^-1 x, R a signed axis permutation."""
        terms = []
        for term in self.terms:
            matrix = rotation @ to_matrix(term.coefficients) @ rotation.T
            terms.append(Term(from_matrix(matrix),
                              term.scalar.rotated(rotation)))
        return TwoForm(terms, label=self.label,
                       support=self.support.rotated(rotation))


class Piece(abc.ABC):
    """
    One connected co-closed 1-form g_mu with its support, an optional
    co-primitive G (delta G = g) and an optional class value.
    """
    def __init__(self, label: str, support: SupportRegion,
                 coprimitive: Optional[TwoForm] = None,
                 kappa: Optional[float] = None, connected: bool = True):
        self.label = label
        self.support = support
        self.coprimitive = coprimitive
        self.kappa = kappa
        self.connected = connected

    @abc.abstractmethod
    def value(self, x: np.ndarray) -> np.ndarray:
        """Covariant components g_mu at points, shape (N, 4)."""

    @abc.abstractmethod
    def fourier(self, p: np.ndarray) -> np.ndarray:
        """Transform of g_mu at momenta, shape (N, 4)."""

    @abc.abstractmethod
    def divergence(self, x: np.ndarray) -> np.ndarray:
        """(delta g)(x) = d^mu g_mu, shape (N,)."""

    @abc.abstractmethod
    def translated(self, shift) -> 'Piece':
        """Piece of x - shift."""


class CoderivativePiece(Piece):
    """g = delta G for a given 2-form G."""

    def __init__(self, coprimitive: TwoForm, label: str = '',
                 kappa: Optional[float] = None,
                 support: Optional[SupportRegion] = None):
        super().__init__(label or 'delta ' + coprimitive.label,
                         support if support is not None
                         else coprimitive.support,
                         coprimitive=coprimitive, kappa=kappa)

    def _require_differentiable(self):
        if not self.coprimitive.is_differentiable:
            raise NotDifferentiableError(
                "Piece {} has dirac_limit factors; only momentum space "
                "evaluation is available".format(self.label))

    def value(self, x):
        self._require_differentiable()
        grad = to_matrix(np.moveaxis(self.coprimitive.gradient(x), 1, -1))
        # grad[n, rho, nu, mu] = d_rho G_{nu mu}; contract rho with nu
        return np.einsum('v,nvvm->nm', SIGNATURE, grad)

    def fourier(self, p):
        p = np.atleast_2d(np.asarray(p, dtype=float))
        matrix = to_matrix(self.coprimitive.fourier(p))
        return -1j * np.einsum('nv,nvm->nm', p, matrix)

    def divergence(self, x):
        self._require_differentiable()
        hess = np.moveaxis(self.coprimitive.hessian(x), 1, -1)
        matrix = to_matrix(hess)
        # matrix[n, rho, sigma, nu, mu] = d_rho d_sigma G_{nu mu}
        return np.einsum('m,v,nmvvm->n', SIGNATURE, SIGNATURE, matrix)

    def translated(self, shift):
        return CoderivativePiece(self.coprimitive.translated(shift),
                                 label=self.label, kappa=self.kappa,
                                 support=self.support.translated(shift))


class OneForm:
    """
    Co-closed test 1-form as a list of pieces. With decomposed=True the
    pieces must have pairwise disjoint supports.
    """

    def __init__(self, pieces: Sequence[Piece], decomposed: bool = False):
        self.pieces: List[Piece] = list(pieces)
        self.decomposed = decomposed
        if decomposed:
            for first, second in itertools.combinations(self.pieces, 2):
                if not disjoint(first.support, second.support):
                    raise GeometryError(
                        "Pieces {} and {} do not have disjoint supports"
                        .format(first.label, second.label))

    @property
    def support(self) -> SupportRegion:
        """Union of the piece supports."""
        region = SupportRegion()
        for piece in self.pieces:
            region = region + piece.support
        return region

    def value(self, x: np.ndarray) -> np.ndarray:
        """Sum of the piece values, shape (N, 4)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        result = np.zeros((x.shape[0], 4))
        for piece in self.pieces:
            result += piece.value(x)
        return result

    def fourier(self, p: np.ndarray) -> np.ndarray:
        """Sum of the piece transforms, shape (N, 4)."""
        p = np.atleast_2d(np.asarray(p, dtype=float))
        result = np.zeros((p.shape[0], 4), dtype=complex)
        for piece in self.pieces:
            result += piece.fourier(p)
        return result

    def divergence(self, x: np.ndarray) -> np.ndarray:
        """delta g at points."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        result = np.zeros(x.shape[0])
        for piece in self.pieces:
            result += piece.divergence(x)
        return result

    def translated(self, shift) -> 'OneForm':
        """All pieces moved by a 4-vector."""
        return OneForm([piece.translated(shift) for piece in self.pieces],
                       decomposed=self.decomposed)

    def coprimitive(self) -> Optional[TwoForm]:
        """Sum of the piece co-primitives, None if any is missing."""
        forms = [piece.coprimitive for piece in self.pieces]
        if not forms or any(form is None for form in forms):
            return None
        total = forms[0]
        for form in forms[1:]:
            total = total + form
        return total


def hodge_star(form: TwoForm) -> TwoForm:
    """(*G)_{mu nu} = 1/2 eps_{mu nu alpha beta} G^{alpha beta}."""
    return form.star()


def coderivative_twoform(form: TwoForm) -> OneForm:
    """
    g = delta G as a one-piece OneForm.
    :raises NotDifferentiableError: when G has dirac_limit factors
    """
    if not form.is_differentiable:
        raise NotDifferentiableError(
            "Co-derivative needs differentiable factors; {} has dirac_limit "
            "factors".format(form.label or 'form'))
    return OneForm([CoderivativePiece(form)])


def gbar(form: TwoForm, tol: float = 1e-9) -> np.ndarray:
    """
    Integral of G_{mu nu} over R^4 as an antisymmetric 4x4 real matrix.
    :raises ValueError: if the zero-momentum transform is not real
    """
    values = form.fourier(np.zeros((1, 4)))[0]
    scale = max(float(np.max(np.abs(values))), 1.0)
    if float(np.max(np.abs(values.imag))) > tol * scale:
        raise ValueError("Zero-momentum transform of {} is not real"
                         .format(form.label or 'form'))
    return to_matrix(values.real)


def type_indicator(form: TwoForm) -> float:
    """E^2 - B^2 of the integrated form: positive electric, negative
    magnetic."""
    values = gbar(form)
    stored = from_matrix(values)
    electric, magnetic = electric_magnetic(stored)
    return float(np.sum(electric ** 2) - np.sum(magnetic ** 2))


def translate_twoform(form: TwoForm, shift) -> TwoForm:
    """G(x - shift)."""
    return form.translated(shift)


def translate_piece(piece: Piece, shift) -> Piece:
    """g(x - shift) with its support and co-primitive."""
    return piece.translated(shift)


def rotate_twoform(form: TwoForm, rotation: np.ndarray) -> TwoForm:
    """Form under a spatial signed axis permutation."""
    return form.rotated(rotation)
