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
The topological potential.

A co-closed g is declared as a sum of pieces with disjoint connected
supports, g = sum_n g_n, each with a co-primitive G_n. Electric pieces
(positive type indicator) keep G_n, magnetic ones are replaced by their
dual, and the potential is A_T(g) = A_0(delta G_T) with

    G_T = sum_n (theta_+ G_n + theta_- *G_n).
"""
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exc import AmbiguousTypeError, ConventionError
from ..exterior.forms import (CoderivativePiece, OneForm, Piece, TwoForm,
                              gbar, type_indicator)
from ..exterior.conventions import electric_magnetic, from_matrix
from ..exterior.profiles import Profile1D, gauss_legendre
from ..exterior.radial import radial_profile
from ..exterior.support import spacelike_separated
from ..loops.curves import ParametricLoop
from ..loops.linking import gauss_linking
from ..loops.loop_functions import (coexact_pair, cone_coprimitive,
                                    loop_function)
from ..propagator.commutator import pauli_jordan, roberts
from ..propagator.quadrature import IntegralResult, QuadratureSpec
from .report import ChargeReport

logger = logging.getLogger('topocharge')

ELECTRIC = 'electric'
MAGNETIC = 'magnetic'
# |indicator| below this fraction of E^2 + B^2 counts as null
TYPE_TOLERANCE = 1e-9
ORACLE_ORDER = 512


def branch_of(form: TwoForm, label: str = '',
              tol: float = TYPE_TOLERANCE) -> str:
    """
    Branch selected by the type indicator of a co-primitive.
    :raises AmbiguousTypeError: when the indicator is null within tol
    """
    stored = from_matrix(gbar(form))
    electric, magnetic = electric_magnetic(stored)
    scale = float(np.sum(electric ** 2) + np.sum(magnetic ** 2))
    indicator = type_indicator(form)
    if scale == 0.0 or abs(indicator) <= tol * scale:
        raise AmbiguousTypeError(label or form.label, indicator)
    return ELECTRIC if indicator > 0 else MAGNETIC


class DecomposedOneForm:
    """
    Pieces with pairwise disjoint supports, each tagged with its branch.
    :raises GeometryError: if two supports intersect
    :raises AmbiguousTypeError: for a piece with null type indicator
    """

    def __init__(self, pieces: Sequence[Piece]):
        for piece in pieces:
            if piece.coprimitive is None:
                raise ValueError("Piece {} has no co-primitive"
                                 .format(piece.label))
        self.one_form = OneForm(pieces, decomposed=True)
        self.tags: Tuple[str, ...] = tuple(
            branch_of(piece.coprimitive, piece.label) for piece in pieces)

    @property
    def pieces(self) -> List[Piece]:
        """The declared pieces in order."""
        return self.one_form.pieces

    @property
    def support(self):
        """Union of the piece supports."""
        return self.one_form.support

    @property
    def label(self) -> str:
        """Labels of the pieces joined by '+'."""
        return ' + '.join(piece.label for piece in self.pieces)

    def fourier(self, p: np.ndarray) -> np.ndarray:
        """Transform of g = sum_n g_n."""
        return self.one_form.fourier(p)

    def translated(self, shift) -> 'DecomposedOneForm':
        """All pieces moved by a 4-vector."""
        return DecomposedOneForm([piece.translated(shift)
                                  for piece in self.pieces])


def decompose(*pieces: Piece) -> DecomposedOneForm:
    """DecomposedOneForm of the given pieces."""
    return DecomposedOneForm(pieces)


def mixed_piece(magnetic: Piece, electric: Piece, eta: float) -> Piece:
    """
    g^m + eta g^e as one piece with co-primitive G^m + eta G^e; both
    parts must share their support.
    """
    coprimitive = magnetic.coprimitive + electric.coprimitive * eta
    kappa = None
    if magnetic.kappa is not None and electric.kappa is not None:
        kappa = magnetic.kappa + eta * electric.kappa
    return CoderivativePiece(
        coprimitive, label='{} + {:g} {}'.format(magnetic.label, eta,
                                                 electric.label),
        kappa=kappa, support=magnetic.support + electric.support)


def build_GT(g: DecomposedOneForm) -> TwoForm:  # pylint: disable=invalid-name
    """G_T: electric co-primitives unchanged, magnetic ones dualized."""
    forms = [piece.coprimitive if tag == ELECTRIC
             else piece.coprimitive.star()
             for piece, tag in zip(g.pieces, g.tags)]
    total = forms[0]
    for form in forms[1:]:
        total = total + form
    return total


def as_decomposed(g) -> DecomposedOneForm:
    if isinstance(g, DecomposedOneForm):
        return g
    if isinstance(g, Piece):
        return DecomposedOneForm([g])
    return DecomposedOneForm(g.pieces)


def _quantity(first: Sequence[str], second: Sequence[str]) -> str:
    if len(first) != 1 or len(second) != 1:
        return 'Delta(G_T1,G_T2)'
    if first[0] == second[0]:
        return 'Delta(G1,G2)'
    if first[0] == ELECTRIC:
        return 'Delta(G1,*G2)'
    return '-Delta(G1,*G2)'


def topo_commutator(first, second,
                    spec: QuadratureSpec = QuadratureSpec(),
                    threads: int = 1,
                    loops: Optional[Tuple[ParametricLoop,
                                          ParametricLoop]] = None,
                    label: str = '') -> ChargeReport:
    """
    sigma_T(g1, g2) = i <[A_T(g1), A_T(g2)]> = Delta(G_T1, G_T2).

    For single pieces this is Delta(G1, G2) on equal branches and
    +-Delta(G1, *G2) on mixed ones.
    :param first: DecomposedOneForm, or a single piece
    :param second: DecomposedOneForm, or a single piece
    :param loops: underlying loops, for the linking number in the report
    """
    first, second = as_decomposed(first), as_decomposed(second)
    spacelike = spacelike_separated(first.support, second.support)
    if not spacelike:
        logger.warning("Supports of %s and %s are not verified spacelike "
                       "separated", first.label, second.label)
    result = pauli_jordan(build_GT(first), build_GT(second), spec, threads)
    report = ChargeReport(
        label=label or '[{}, {}]'.format(first.label, second.label),
        branches=first.tags + second.tags,
        quantity=_quantity(first.tags, second.tags),
        result=result, spacelike=spacelike,
        kappa=(_total_kappa(first), _total_kappa(second)))
    if loops is not None:
        linking = gauss_linking(*loops)
        report.linking, report.linking_raw = linking.number, linking.raw
    return report


def _total_kappa(g: DecomposedOneForm) -> Optional[float]:
    values = [piece.kappa for piece in g.pieces]
    if any(value is None for value in values):
        return None
    return float(sum(values))


def eta_threshold(magnetic: TwoForm, electric: TwoForm) -> float:
    """
    Smallest eta with type_indicator(G^m + eta G^e) > 0 when the pair has
    no cross term: sqrt(-indicator(G^m) / indicator(G^e)).
    :raises ValueError: unless indicator(G^m) < 0 < indicator(G^e)
    """
    negative = type_indicator(magnetic)
    positive = type_indicator(electric)
    if not negative < 0 < positive:
        raise ValueError(
            "eta_threshold needs a magnetic and an electric co-primitive, "
            "got indicators {:.3e} and {:.3e}".format(negative, positive))
    return math.sqrt(-negative / positive)


def reduced_roberts_oracle(b: Profile1D, e1: float,
                           order: int = ORACLE_ORDER) -> float:
    """
    int dx x c(x^2) C((x - e1)^2), the Hopf Roberts term with point-like
    time and axial factors up to ROBERTS_ORACLE_CONSTANT.
    :raises ConventionError: unless width(b) < min(1, e1) / 4
    """
    if not b.width < min(1.0, abs(e1)) / 4.0:
        raise ConventionError(
            "Oracle needs width(b) < min(1, e1) / 4, got width {} and e1 {}"
            .format(b.width, e1))
    radial = radial_profile(b)
    r_lo, r_hi = radial.band
    total = 0.0
    for lower, upper in ((-r_hi, -r_lo), (r_lo, r_hi)):
        x, weights = gauss_legendre(order, lower, upper)
        total += float(np.sum(weights * x * radial.c(x ** 2)
                              * radial.C((x - e1) ** 2)))
    return total


def richardson_extrapolate(values: Sequence[float], ratio: float = 2.0) \
        -> Tuple[float, float]:
    """
    Richardson extrapolation of a geometric ladder of three values, the
    convergence order being estimated from the ladder itself.
    :param values: results at step h, h / ratio, h / ratio^2
    :return: (extrapolated value, estimated order)
    """
    if len(values) != 3:
        raise ValueError("Richardson extrapolation needs three values")
    coarse, middle, fine = (float(v) for v in values)
    first_step, second_step = middle - coarse, fine - middle
    if second_step == 0.0 or first_step == 0.0:
        return fine, math.inf
    order = math.log(abs(first_step / second_step)) / math.log(ratio)
    if order <= 0:
        logger.warning("Ladder %r does not converge; returning finest value",
                       list(values))
        return fine, order
    return fine + second_step / (ratio ** order - 1.0), order


def traversal_table(first_smear, first_loop: ParametricLoop, second_smear,
                    second_loop: ParametricLoop, first_counts: Sequence[int],
                    second_counts: Sequence[int],
                    spec: QuadratureSpec = QuadratureSpec(),
                    threads: int = 1) -> List[Dict[str, float]]:
    """
    Roberts term of the cone co-primitives of two loops for every pair of
    traversal counts, with its ratio to n1 n2 times the single value. The
    traversed loops are swept along their own parametrization, so the
    ratio is 1 only up to quadrature error.
    """
    results: Dict[Tuple[int, int], IntegralResult] = {}
    pairs = [(1, 1)] + [(n1, n2) for n1 in first_counts
                        for n2 in second_counts]
    for n1, n2 in pairs:
        if (n1, n2) in results:
            continue
        forms = (cone_coprimitive(first_smear, first_loop.traversed(n1)),
                 cone_coprimitive(second_smear, second_loop.traversed(n2)))
        results[(n1, n2)] = roberts(*forms, spec=spec, threads=threads)
    single = results[(1, 1)].value
    rows = []
    for n1 in first_counts:
        for n2 in second_counts:
            result = results[(n1, n2)]
            rows.append({'n1': n1, 'n2': n2, 'value': result.value,
                         'value_err': result.error_estimate,
                         'ratio': result.value / (n1 * n2 * single)
                         if single else math.nan,
                         'converged': result.converged})
    return rows


def coexact_roberts(first_smear, second_smear, loop: ParametricLoop,
                    partner: TwoForm,
                    spec: QuadratureSpec = QuadratureSpec(),
                    threads: int = 1) -> IntegralResult:
    """Roberts term of a zero-class pair of loop functions on one loop
    against a partner; vanishes within error."""
    pair = coexact_pair(first_smear, second_smear, loop)
    return roberts(pair.coprimitive(), partner, spec, threads)


def loop_roberts(smear, loop: ParametricLoop, partner: TwoForm,
                 spec: QuadratureSpec = QuadratureSpec(),
                 threads: int = 1) -> IntegralResult:
    """Roberts term of a loop function through its disk co-primitive."""
    return roberts(loop_function(smear, loop).coprimitive, partner, spec,
                   threads)
